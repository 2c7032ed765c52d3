#include <doctest.h>

#include <fstream>
#include <sstream>
#include <variant>

#include "corpus.hpp"
#include "xduce/determinize.hpp"
#include "xduce/semantics.hpp"

using namespace xduce;

namespace {

Word w(const char* text) { return parse_word(text); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("context and normalize") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  DeterminizeContext ctx(constr, 1);
  CHECK(ctx.speed() == 4);
  CHECK(ctx.capacity() == 5);
  CHECK(ctx.viable(1, w("bab"), false));
  CHECK_FALSE(ctx.viable(3, w("ab"), false));
  CHECK(ctx.viable(0, w("_"), true));

  NormalizeResult n = normalize({{0, 3}, {2, 4}, {3, 4}}, w("ababa"));
  CHECK(n.dropped == 3);
  CHECK(n.state.z == w("ba"));
  CHECK(n.state.pairs ==
        std::vector<TrackedPair>{{0, 0}, {2, 1}, {3, 1}});

  NormalizeResult dup = normalize({{0, 2}, {0, 2}}, w("ab"));
  CHECK(dup.state.pairs.size() == 1);
  CHECK(dup.state.z.empty());
}

TEST_CASE("construction on the block transducer") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  DeterminizeResult r = determinize(constr, 1);
  CHECK(r.speed == 4);
  CHECK(r.buffer_capacity == 5);
  CHECK(r.overflow_drops == 0);
  CHECK(r.automaton.states.size() == r.macro.size());
  REQUIRE(!r.macro.empty());
  REQUIRE(r.macro[0].has_value());
  CHECK(render_macro(constr, *r.macro[0]) == "z=_ P={(q0,0)}");

  CHECK(tdfa_run(r.automaton, w("_"), w("_")).accepted);
  CHECK(tdfa_run(r.automaton, w("aa"), w("ababa")).accepted);
  CHECK(tdfa_run(r.automaton, w("aa"), w("ababab")).accepted);
  CHECK(tdfa_run(r.automaton, w("ab"), w("ababaa")).accepted);
  CHECK_FALSE(tdfa_run(r.automaton, w("aa"), w("abab")).accepted);
  CHECK_FALSE(tdfa_run(r.automaton, w("a"), w("aba")).accepted);
  CHECK_FALSE(tdfa_run(r.automaton, w("b"), w("_")).accepted);
}

TEST_CASE("macro trace matches the golden construction sequence") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  DeterminizeResult r = determinize(constr, 1);
  Annotations ann = parse_annotations(render_annotations(constr, r));
  CHECK(ann.speed == 4);
  CHECK(ann.capacity == 5);
  CHECK(ann.overflow_drops == 0);
  CHECK(ann.display.size() == r.automaton.states.size());

  TdfaTrace t = tdfa_run(r.automaton, w("aa"), w("ababab"));
  CHECK(macro_trace(r.automaton, ann, t) == slurp(golden_path("constr_t1_trace.txt")));
}

TEST_CASE("small bounds lose pairs and report drops") {
  auto le2n = std::get<Nft>(corpus("le2n.nft"));
  DeterminizeResult r = determinize(le2n, 0);
  CHECK(r.buffer_capacity == 2);
  CHECK(r.overflow_drops > 0);
  CHECK(tdfa_run(r.automaton, w("0"), w("00")).accepted);
  CHECK(tdfa_run(r.automaton, w("00"), w("00")).accepted);
  CHECK_FALSE(tdfa_run(r.automaton, w("0"), w("000")).accepted);
  // In the relation, but beyond what a two-symbol buffer can carry.
  CHECK(nft_membership(le2n, w("00"), w("0000")));
  CHECK_FALSE(tdfa_run(r.automaton, w("00"), w("0000")).accepted);

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  DeterminizeResult e0 = determinize(exbt, 0);
  CHECK(e0.overflow_drops > 0);
  CHECK(tdfa_run(e0.automaton, w("110"), w("_")).accepted);
  CHECK_FALSE(tdfa_run(e0.automaton, w("001010"), w("00")).accepted);

  DeterminizeResult e2 = determinize(exbt, 2);
  CHECK(tdfa_run(e2.automaton, w("001010"), w("00")).accepted);
}

TEST_CASE("state budget") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  CHECK_THROWS_AS(determinize(constr, 1, 3), budget_error);
  try {
    determinize(constr, 1, 3);
  } catch (const budget_error& e) {
    CHECK(e.reached == 4);
  }
}

TEST_CASE("sink state shape") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  DeterminizeResult r = determinize(constr, 1);
  REQUIRE(r.sink >= 0);
  CHECK(r.automaton.states[r.sink] == "sink");
  CHECK_FALSE(r.macro[r.sink].has_value());
  CHECK_FALSE(r.automaton.accepting[r.sink]);
  // The sink consumes whatever remains of both tapes.
  CHECK_FALSE(tdfa_run(r.automaton, w("ba"), w("ab")).accepted);
}
