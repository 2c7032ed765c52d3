#include <doctest.h>

#include <variant>

#include "corpus.hpp"
#include "xduce/analysis.hpp"

using namespace xduce;

namespace {

Word w(const char* text) { return parse_word(text); }

}  // namespace

TEST_CASE("structural measures") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  CHECK(output_speed(constr) == 4);
  CHECK(shortcut_guarantee(constr) == 1);
  CHECK(co_reachable(constr) == std::vector<int>{0, 1, 2, 3});

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  CHECK(output_speed(exbt) == 1);
  CHECK(shortcut_guarantee(exbt) == 3);
  CHECK(co_reachable(exbt).size() == 8);

  auto le2n = std::get<Nft>(corpus("le2n.nft"));
  CHECK(output_speed(le2n) == 2);
  CHECK(shortcut_guarantee(le2n) == 0);

  auto dead_end = parse_nft(
      "machine nft\nstates p d\ninput a\noutput a\ninitial p\naccept p\n"
      "t p a d a\n");
  CHECK(co_reachable(dead_end) == std::vector<int>{0});
  CHECK(co_reachable_mask(dead_end) == std::vector<char>{1, 0});
}

TEST_CASE("accepting continuations") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  int q0 = constr.state_index("q0");
  int q1 = constr.state_index("q1");
  int q3 = constr.state_index("q3");

  auto c = accepting_continuation(constr, q1, w("bab"), false);
  REQUIRE(c.has_value());
  CHECK(c->input == w("a"));
  CHECK(c->output == w("bab"));
  CHECK(c->final_state == q0);

  CHECK_FALSE(accepting_continuation(constr, q0, w("b"), false).has_value());
  CHECK_FALSE(accepting_continuation(constr, q3, w("ab"), false).has_value());

  auto stay = accepting_continuation(constr, q0, w("_"), true);
  REQUIRE(stay.has_value());
  CHECK(stay->input.empty());
  CHECK(stay->output.empty());

  auto exact = accepting_continuation(constr, q1, w("ba"), true);
  REQUIRE(exact.has_value());
  CHECK(exact->output == w("ba"));
  CHECK_FALSE(accepting_continuation(constr, q1, w("b"), true).has_value());

  // Mid-tape inspection may run through several transitions.
  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  auto deep = accepting_continuation(exbt, exbt.state_index("cb"), w("0"), false);
  REQUIRE(deep.has_value());
  CHECK(deep->input == w("1011"));
  CHECK(deep->output == w("0"));
}

TEST_CASE("trailing witness search") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  SearchLimits lim{8, 50'000'000, 1};

  auto r0 = find_trailing_witness(constr, 0, lim);
  REQUIRE(r0.status == SearchStatus::found);
  const TrailingWitness& tw = *r0.witness;
  CHECK(tw.a == w("a"));
  CHECK(tw.u == w("aba"));
  CHECK(tw.v == w("b"));
  CHECK(constr.states[tw.q1] == "q2");
  CHECK(constr.states[tw.q2] == "q1");
  std::string block = render_witness(constr, tw);
  CHECK(block.find("v = b\n") != std::string::npos);

  auto r1 = find_trailing_witness(constr, 1, lim);
  CHECK(r1.status == SearchStatus::absent);

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  for (std::size_t t = 0; t <= 3; ++t) {
    SearchLimits el{t + 1, 50'000'000, 1};
    auto r = find_trailing_witness(exbt, t, el);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.witness->v.size() == t + 1);
    CHECK(r.witness->a == Word(t + 1, Symbol("0")));
    CHECK(r.witness->v == Word(t + 1, Symbol("0")));
  }

  SearchLimits tiny{20, 10, 1};
  CHECK(find_trailing_witness(exbt, 3, tiny).status ==
        SearchStatus::budget_exceeded);
}

TEST_CASE("variation witness search") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  auto r = find_variation_witness(constr, 0, {2, 50'000'000, 1});
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.witness->a == w("a"));
  CHECK(r.witness->d == 1);
  CHECK(((r.witness->o1 == w("abab") && r.witness->o2 == w("aba")) ||
         (r.witness->o1 == w("aba") && r.witness->o2 == w("abab"))));
  CHECK(find_variation_witness(constr, 1, {2, 50'000'000, 1}).status ==
        SearchStatus::absent);

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  auto e = find_variation_witness(exbt, 2, {3, 50'000'000, 1});
  REQUIRE(e.status == SearchStatus::found);
  CHECK(e.witness->a == w("000"));
  CHECK(e.witness->d == 3);
  CHECK(find_variation_witness(exbt, 2, {2, 50'000'000, 1}).status ==
        SearchStatus::absent);
}

TEST_CASE("valuedness and ambiguity") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  ValuednessResult v = max_valuedness(constr, 4, 100);
  CHECK(v.k == 4);
  CHECK_FALSE(v.truncated);
  REQUIRE(v.witness_input.has_value());
  CHECK(*v.witness_input == w("aaaa"));

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  ValuednessResult ve = max_valuedness(exbt, 5, 100);
  CHECK(ve.k == 1);
  REQUIRE(ve.witness_input.has_value());
  CHECK(*ve.witness_input == w("110"));

  CHECK(max_ambiguity(constr, 4, 16, 100) == 4);
  CHECK(max_ambiguity(constr, 2, 6, 100) == 2);
  CHECK(max_ambiguity(exbt, 5, 5, 100) == 1);

  auto le2n = std::get<Nft>(corpus("le2n.nft"));
  CHECK(max_ambiguity(le2n, 2, 4, 100) == 3);
  ValuednessResult vl = max_valuedness(le2n, 3, 100);
  CHECK(vl.k == 7);  // 0^3 yields outputs of every length up to 6
}
