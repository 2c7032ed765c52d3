#include <doctest.h>

#include <random>

#include "xduce/words.hpp"

using namespace xduce;

namespace {

Word w(const char* text) { return parse_word(text); }

}  // namespace

TEST_CASE("word parsing") {
  CHECK(w("_").empty());
  CHECK(w("abc") == Word{Symbol("a"), Symbol("b"), Symbol("c")});
  CHECK(w("[p@.,;;,1]") == Word{Symbol("p@."), Symbol(";;"), Symbol("1")});
  CHECK(w("[x]") == Word{Symbol("x")});

  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("[a,]"), word_error);
  CHECK_THROWS_AS(parse_word("[]"), word_error);
  CHECK_THROWS_AS(parse_word("[a b]"), word_error);
  CHECK_THROWS_AS(parse_word("."), word_error);
  CHECK_THROWS_AS(parse_word("a_b"), word_error);
  CHECK_THROWS_AS(parse_word("[;]"), word_error);
}

TEST_CASE("symbol token rules") {
  CHECK(valid_symbol_token("a"));
  CHECK(valid_symbol_token("p@."));
  CHECK(valid_symbol_token(";;"));
  CHECK_FALSE(valid_symbol_token(""));
  CHECK_FALSE(valid_symbol_token("."));
  CHECK_FALSE(valid_symbol_token("_"));
  CHECK_FALSE(valid_symbol_token("a,b"));
  CHECK_FALSE(valid_symbol_token("a b"));
  CHECK_FALSE(valid_symbol_token("#x"));
  CHECK_FALSE(valid_symbol_token(";"));
  CHECK_FALSE(valid_symbol_token(";;;"));
}

TEST_CASE("word rendering round trips") {
  CHECK(render_word(w("_"), true) == "_");
  CHECK(render_word(w("abc"), true) == "abc");
  CHECK(render_word(w("[p@.,;;]"), false) == "[p@.,;;]");
  for (const char* s : {"_", "ab", "[p@.,;;,1]"}) {
    Word x = w(s);
    CHECK(parse_word(render_word(x, s[0] != '[')) == x);
  }
}

TEST_CASE("lcp and prefix operations") {
  CHECK(lcp(w("ababa"), w("ababab")) == w("ababa"));
  CHECK(lcp(w("abc"), w("xbc")).empty());
  CHECK(lcp(w("_"), w("abc")).empty());

  CHECK(is_prefix(w("ab"), w("abc")));
  CHECK(is_prefix(w("_"), w("abc")));
  CHECK_FALSE(is_prefix(w("abc"), w("ab")));

  CHECK(strip_prefix(w("ab"), w("abc")) == w("c"));
  CHECK(strip_prefix(w("abc"), w("abc")) == w("_"));
  CHECK_FALSE(strip_prefix(w("b"), w("abc")).has_value());

  CHECK(concat(w("ab"), w("c")) == w("abc"));
  CHECK(concat(w("_"), w("_")).empty());
}

TEST_CASE("distance") {
  CHECK(distance(w("ababa"), w("ababab")) == 1);
  CHECK(distance(w("aba"), w("abb")) == 2);
  CHECK(distance(w("_"), w("abc")) == 3);
  CHECK(distance(w("abc"), w("abc")) == 0);
}

TEST_CASE("distance laws on random triples") {
  std::mt19937_64 gen(7);
  auto random_word = [&] {
    Word x;
    std::size_t len = gen() % 8;
    for (std::size_t i = 0; i < len; ++i)
      x.push_back(Symbol(gen() % 2 ? "a" : "b"));
    return x;
  };
  for (int i = 0; i < 300; ++i) {
    Word x = random_word(), y = random_word(), z = random_word();
    Word p = random_word();
    CHECK(distance(x, x) == 0);
    CHECK(distance(x, y) == distance(y, x));
    CHECK(distance(concat(p, x), concat(p, y)) == distance(x, y));
    CHECK(distance(x, z) <= distance(x, y) + distance(y, z));
    Word c = lcp(x, y);
    CHECK(is_prefix(c, x));
    CHECK(is_prefix(c, y));
    if (c.size() < x.size() && c.size() < y.size())
      CHECK(x[c.size()] != y[c.size()]);
  }
}
