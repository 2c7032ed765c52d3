#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xduce/machines.hpp"
#include "xduce/words.hpp"

namespace xduce {

// States with an accepting continuation on some (possibly empty) input.
std::vector<int> co_reachable(const Nft& m);
std::vector<char> co_reachable_mask(const Nft& m);

// Longest output word over all transition entries; 0 without entries.
std::size_t output_speed(const Nft& m);

// Maximum over co-reachable states of the shortest accepting input length
// from that state; 0 when no state is co-reachable.
std::size_t shortcut_guarantee(const Nft& m);

struct Continuation {
  Word input;
  Word output;
  int final_state = 0;
};

// Shortest-input run from `state` to an accepting state whose output starts
// with `prefix` (exact = false) or equals it (exact = true). Decided exactly;
// the input length is not bounded.
std::optional<Continuation> accepting_continuation(const Nft& m, int state,
                                                   const Word& prefix,
                                                   bool exact);

// Two runs on a common input a: one reaches q1 with output u.v, the other
// reaches q2 with output u, and both extend to acceptance, the second with an
// output starting v. |v| exceeds the queried bound.
struct TrailingWitness {
  Word a, u, v;
  int q1 = 0, q2 = 0;
  Word b1, w1;  // continuation from q1
  Word b2, w2;  // continuation from q2; its output is v.w2
  int f1 = 0, f2 = 0;
};

// Two runs on a common input ending in co-reachable states whose outputs are
// further apart than the queried bound.
struct VariationWitness {
  Word a, o1, o2;
  int q1 = 0, q2 = 0;
  std::size_t d = 0;
};

enum class SearchStatus { found, absent, budget_exceeded };

template <class W>
struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<W> witness;
  std::uint64_t nodes = 0;
};

struct SearchLimits {
  std::size_t max_input = 0;
  std::uint64_t node_budget = 50'000'000;
  int jobs = 1;
};

// Sweeps all inputs up to limits.max_input in (length, lexicographic) order;
// the returned witness is the least one in that order, independent of jobs.
// Absence is conclusive for the given input bound; running out of budget is
// reported as its own status.
SearchResult<TrailingWitness> find_trailing_witness(const Nft& m,
                                                    std::size_t bound,
                                                    const SearchLimits& limits);
SearchResult<VariationWitness> find_variation_witness(
    const Nft& m, std::size_t bound, const SearchLimits& limits);

struct ValuednessResult {
  std::uint64_t k = 0;
  bool truncated = false;
  std::optional<Word> witness_input;  // least input attaining k; none if k = 0
};

// Maximum number of distinct accepted outputs over inputs up to max_input,
// counting at most `cap` outputs per input.
ValuednessResult max_valuedness(const Nft& m, std::size_t max_input,
                                std::uint64_t cap, int jobs = 1);

// Maximum number of accepting runs over accepted pairs with bounded words,
// saturating at `cap`.
std::uint64_t max_ambiguity(const Nft& m, std::size_t max_input,
                            std::size_t max_output, std::uint64_t cap,
                            int jobs = 1);

std::string render_witness(const Nft& m, const TrailingWitness& w);
std::string render_witness(const Nft& m, const VariationWitness& w);

}  // namespace xduce
