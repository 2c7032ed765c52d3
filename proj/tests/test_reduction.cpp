#include <doctest.h>

#include <variant>

#include "corpus.hpp"
#include "xduce/analysis.hpp"
#include "xduce/reduction.hpp"
#include "xduce/semantics.hpp"

using namespace xduce;

namespace {

Word w(const char* text) { return parse_word(text); }

}  // namespace

TEST_CASE("configuration encoding") {
  auto walker = std::get<TuringMachine>(corpus("walker.tm"));
  Configuration c = tm_initial_configuration(walker);
  CHECK(encode_configuration(walker, c) == w("[p@.]"));
  c = *tm_step(walker, c);
  CHECK(encode_configuration(walker, c) == w("[1,p@.]"));
  c = *tm_step(walker, c);
  CHECK(encode_configuration(walker, c) == w("[1,1,p@.]"));
}

TEST_CASE("reduction vocabulary and legend") {
  auto walker = std::get<TuringMachine>(corpus("walker.tm"));
  ReductionNft r = tm_to_nft(walker);
  std::vector<std::string> tokens;
  for (const Symbol& s : r.nft.input_alphabet) tokens.push_back(s.text);
  CHECK(tokens == std::vector<std::string>{"1", "p@1", "p@.", ";;", "copy", "step"});
  CHECK(r.nft.output_alphabet == r.nft.input_alphabet);
  CHECK(r.legend.size() == 6);
  CHECK(output_speed(r.nft) == 3);

  std::string text = serialize_with_legend(r);
  CHECK(text.find("# legend:") != std::string::npos);
  CHECK(std::get<Nft>(parse_machine(text)) == r.nft);
}

TEST_CASE("stream builders") {
  auto walker = std::get<TuringMachine>(corpus("walker.tm"));
  CHECK(build_reduction_input(walker, 0, ReductionMode::copy) ==
        w("[p@.,;;,copy]"));
  CHECK(expected_reduction_output(walker, 0, ReductionMode::copy) ==
        w("[p@.,;;]"));
  CHECK(build_reduction_input(walker, 1, ReductionMode::step) ==
        w("[p@.,;;,1,p@.,;;,step]"));
  CHECK(expected_reduction_output(walker, 1, ReductionMode::step) ==
        w("[p@.,;;,1,p@.,;;,1,1,p@.,;;]"));

  auto stopper = std::get<TuringMachine>(corpus("stopper.tm"));
  CHECK(build_reduction_input(stopper, 0, ReductionMode::copy) ==
        w("[q0@.,;;,copy]"));
  CHECK_THROWS(build_reduction_input(stopper, 1, ReductionMode::copy));
  CHECK_THROWS(expected_reduction_output(stopper, 0, ReductionMode::step));
}

TEST_CASE("copy and step branches accept their streams") {
  auto walker = std::get<TuringMachine>(corpus("walker.tm"));
  ReductionNft r = tm_to_nft(walker);
  for (std::size_t k = 0; k <= 3; ++k) {
    Word in_c = build_reduction_input(walker, k, ReductionMode::copy);
    Word out_c = expected_reduction_output(walker, k, ReductionMode::copy);
    CHECK(nft_membership(r.nft, in_c, out_c));
    Word in_s = build_reduction_input(walker, k, ReductionMode::step);
    Word out_s = expected_reduction_output(walker, k, ReductionMode::step);
    CHECK(nft_membership(r.nft, in_s, out_s));
    // The two modes produce different outputs on the same stream.
    CHECK_FALSE(nft_membership(r.nft, in_c, out_s));
    CHECK_FALSE(nft_membership(r.nft, in_s, out_c));
  }

  // A stream that is not the machine's own run is still copied faithfully.
  CHECK(nft_membership(r.nft, w("[1,1,p@.,;;,copy]"), w("[1,1,p@.,;;]")));
  // The step branch advances arbitrary configurations, not just run prefixes.
  CHECK(nft_membership(r.nft, w("[1,1,p@.,;;,step]"),
                       w("[p@.,;;,1,1,1,p@.,;;]")));
}

TEST_CASE("step branch dies on halting configurations") {
  auto stopper = std::get<TuringMachine>(corpus("stopper.tm"));
  ReductionNft r = tm_to_nft(stopper);
  CHECK(nft_membership(r.nft, w("[q0@.,;;,copy]"), w("[q0@.,;;]")));
  OutputSet s = nft_outputs(r.nft, w("[q0@.,;;,step]"), 10);
  CHECK(s.words.empty());
}

TEST_CASE("reductions are unambiguous") {
  auto walker = std::get<TuringMachine>(corpus("walker.tm"));
  auto stopper = std::get<TuringMachine>(corpus("stopper.tm"));
  CHECK(max_ambiguity(tm_to_nft(walker).nft, 6, 18, 10) == 1);
  CHECK(max_ambiguity(tm_to_nft(stopper).nft, 6, 12, 10) == 1);
}

TEST_CASE("token collisions are rejected") {
  auto bad = parse_tm(
      "machine tm\nstates p\nalphabet copy\ninitial p\naccept\n"
      "t p . p copy R\n");
  CHECK_THROWS_AS(tm_to_nft(bad), validation_error);
}
