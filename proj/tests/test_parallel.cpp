#include <doctest.h>

#include <variant>

#include "corpus.hpp"
#include "xduce/analysis.hpp"
#include "xduce/harness.hpp"
#include "xduce/reduction.hpp"

using namespace xduce;

// Every threaded sweep must report exactly what the serial walk reports.

TEST_CASE("relation enumeration is thread invariant") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  CHECK(enumerate_relation(constr, {8, 32}, 1) ==
        enumerate_relation(constr, {8, 32}, 4));
  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  CHECK(enumerate_relation(exbt, {9, 9}, 1) ==
        enumerate_relation(exbt, {9, 9}, 3));
}

TEST_CASE("witness searches are thread invariant") {
  auto walker = std::get<TuringMachine>(corpus("walker.tm"));
  Nft red = tm_to_nft(walker).nft;

  SearchLimits serial{9, 50'000'000, 1};
  SearchLimits threaded{9, 50'000'000, 4};
  auto a = find_trailing_witness(red, 3, serial);
  auto b = find_trailing_witness(red, 3, threaded);
  REQUIRE(a.status == SearchStatus::found);
  REQUIRE(b.status == SearchStatus::found);
  CHECK(a.witness->a == b.witness->a);
  CHECK(a.witness->u == b.witness->u);
  CHECK(a.witness->v == b.witness->v);
  CHECK(a.witness->v.size() > 3);

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  auto c = find_variation_witness(exbt, 1, {6, 50'000'000, 1});
  auto d = find_variation_witness(exbt, 1, {6, 50'000'000, 4});
  REQUIRE(c.status == SearchStatus::found);
  REQUIRE(d.status == SearchStatus::found);
  CHECK(c.witness->a == d.witness->a);
  CHECK(c.witness->d == d.witness->d);

  // Conclusive absence reports identical node accounting either way.
  auto e = find_trailing_witness(red, 3, {4, 50'000'000, 1});
  auto f = find_trailing_witness(red, 3, {4, 50'000'000, 4});
  CHECK(e.status == SearchStatus::absent);
  CHECK(f.status == SearchStatus::absent);
  CHECK(e.nodes == f.nodes);
}

TEST_CASE("budget accounting is thread invariant") {
  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  auto a = find_trailing_witness(exbt, 50, {14, 300, 1});
  auto b = find_trailing_witness(exbt, 50, {14, 300, 4});
  CHECK(a.status == SearchStatus::budget_exceeded);
  CHECK(b.status == SearchStatus::budget_exceeded);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("valuedness and ambiguity are thread invariant") {
  auto constr = std::get<Nft>(corpus("constr.nft"));
  ValuednessResult v1 = max_valuedness(constr, 8, 100, 1);
  ValuednessResult v4 = max_valuedness(constr, 8, 100, 4);
  CHECK(v1.k == v4.k);
  CHECK(v1.truncated == v4.truncated);
  CHECK(v1.witness_input == v4.witness_input);

  auto exbt = std::get<Nft>(corpus("exbt.nft"));
  ValuednessResult e1 = max_valuedness(exbt, 9, 100, 1);
  ValuednessResult e4 = max_valuedness(exbt, 9, 100, 4);
  CHECK(e1.k == e4.k);
  CHECK(e1.witness_input == e4.witness_input);

  CHECK(max_ambiguity(constr, 6, 24, 1000, 1) ==
        max_ambiguity(constr, 6, 24, 1000, 4));
}
