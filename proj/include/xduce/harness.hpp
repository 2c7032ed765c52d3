#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "xduce/machines.hpp"
#include "xduce/words.hpp"

namespace xduce {

struct Domain {
  std::size_t max_input = 0;
  std::size_t max_output = 0;
};

using Relation = std::vector<std::pair<Word, Word>>;

// Every accepted pair with |a| <= max_input and |u| <= max_output, sorted by
// (|a|, a, |u|, u) under the declared alphabet orders, duplicate-free.
Relation enumerate_relation(const Nft& m, Domain d, int jobs = 1);
Relation enumerate_relation(const Tdfa& m, Domain d);

struct Counterexample {
  Word a, u;
  bool v1 = false;  // membership verdict of the first machine
  bool v2 = false;
};

// Compares the relations restricted to the domain and returns the least
// differing pair, if any. Requires two transducers/automata declaring the
// same alphabets in the same order.
std::optional<Counterexample> check_equivalence(const Machine& m1,
                                                const Machine& m2, Domain d,
                                                int jobs = 1);

// Seeded pseudo-random transducer over single-letter alphabets; the same
// arguments give the same machine on every platform. Initial state is q0 and
// roughly `density` of the (state, symbol, target) slots carry an option.
Nft random_nft(std::uint64_t seed, std::size_t n_states,
               std::size_t n_symbols, std::size_t max_out, double density);

}  // namespace xduce
