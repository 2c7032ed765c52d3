#include <doctest.h>

#include <algorithm>
#include <variant>

#include "corpus.hpp"
#include "xduce/determinize.hpp"
#include "xduce/harness.hpp"
#include "xduce/semantics.hpp"

using namespace xduce;

namespace {

Word w(const char* text) { return parse_word(text); }

Word zeros(std::size_t n) { return Word(n, Symbol("0")); }

bool contains(const Relation& r, const Word& a, const Word& u) {
  return std::find(r.begin(), r.end(), std::make_pair(a, u)) != r.end();
}

}  // namespace

TEST_CASE("transducer relation enumeration") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  Relation r = enumerate_relation(constr, {4, 16});
  CHECK(r.size() == 13);
  CHECK(r.front() == std::make_pair(w("_"), w("_")));
  CHECK(contains(r, w("ab"), w("ababaa")));
  CHECK(contains(r, w("aaaa"), w("ababaababab")));
  for (const auto& [a, u] : r) CHECK(nft_membership(constr, a, u));
  Relation dedup = r;
  dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
  CHECK(dedup.size() == r.size());
}

TEST_CASE("relation enumeration agrees across machine kinds") {
  auto le2n_t = std::get<Nft>(corpus("le2n.nft"));
  auto le2n_a = std::get<Tdfa>(corpus("le2n.tdfa"));
  Relation expected;
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= 2 * n && m <= 6; ++m)
      expected.emplace_back(zeros(n), zeros(m));
  CHECK(enumerate_relation(le2n_t, {3, 6}) == expected);
  CHECK(enumerate_relation(le2n_a, {3, 6}) == expected);

  auto lastsym = std::get<Tdfa>(corpus("lastsym.tdfa"));
  Relation ls = enumerate_relation(lastsym, {3, 3});
  CHECK(ls.size() == 15);
  CHECK(contains(ls, w("010"), w("000")));
  CHECK(contains(ls, w("01"), w("11")));
  CHECK_FALSE(contains(ls, w("01"), w("00")));
}

TEST_CASE("relations of truncated constructions nest") {
  auto le2n = std::get<Nft>(corpus("le2n.nft"));
  Relation full = enumerate_relation(le2n, {3, 6});
  Relation r0 = enumerate_relation(determinize(le2n, 0).automaton, {3, 6});
  Relation r2 = enumerate_relation(determinize(le2n, 2).automaton, {3, 6});
  CHECK(std::includes(full.begin(), full.end(), r2.begin(), r2.end()));
  CHECK(std::includes(r2.begin(), r2.end(), r0.begin(), r0.end()));
  CHECK(r0.size() < r2.size());
  CHECK(r2.size() < full.size());
}

TEST_CASE("bounded equivalence checking") {
  auto le2n_t = corpus("le2n.nft");
  auto le2n_a = corpus("le2n.tdfa");
  CHECK_FALSE(check_equivalence(le2n_t, le2n_a, {6, 12}).has_value());

  auto constr = corpus("constr.nft");
  CHECK_FALSE(check_equivalence(constr, constr, {5, 20}).has_value());

  Machine le1n = parse_nft(
      "machine nft\nstates q\ninput 0\noutput 0\ninitial q\naccept q\n"
      "t q 0 q _\nt q 0 q 0\n");
  auto cx = check_equivalence(le1n, le2n_t, {4, 8});
  REQUIRE(cx.has_value());
  CHECK(cx->a == w("0"));
  CHECK(cx->u == w("00"));
  CHECK_FALSE(cx->v1);
  CHECK(cx->v2);

  CHECK_THROWS_AS(check_equivalence(constr, le2n_t, {2, 2}),
                  validation_error);
  CHECK_THROWS_AS(check_equivalence(corpus("walker.tm"), le2n_t, {2, 2}),
                  validation_error);
}

TEST_CASE("seeded random transducers are reproducible") {
  Nft a = random_nft(42, 3, 2, 2, 0.5);
  Nft b = random_nft(42, 3, 2, 2, 0.5);
  CHECK(a == b);
  CHECK(a.states.size() == 3);
  CHECK(a.input_alphabet.size() == 2);
  validate(a);

  bool any_difference = false;
  for (std::uint64_t seed = 0; seed < 8 && !any_difference; ++seed)
    any_difference = !(random_nft(seed, 3, 2, 2, 0.5) == a);
  CHECK(any_difference);
}
