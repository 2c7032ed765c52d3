#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xduce/machines.hpp"
#include "xduce/semantics.hpp"
#include "xduce/words.hpp"

namespace xduce {

// A transducer run tracked inside a macro state: the run is in `state` and
// has already produced the first `offset` symbols of the buffered output.
struct TrackedPair {
  int state = 0;
  std::size_t offset = 0;
  friend bool operator==(const TrackedPair&, const TrackedPair&) = default;
  friend auto operator<=>(const TrackedPair&, const TrackedPair&) = default;
};

// Buffered output symbols not yet produced by every tracked run, plus the
// set of tracked runs. Pairs are sorted and duplicate-free.
struct MacroState {
  Word z;
  std::vector<TrackedPair> pairs;
  friend bool operator==(const MacroState&, const MacroState&) = default;
  friend auto operator<=>(const MacroState&, const MacroState&) = default;
};

// Shared lookup state for macro stepping: machine constants and a memo for
// viability queries (does some accepting continuation from `state` produce
// `suffix` as a prefix of its output, or exactly when exact is set?).
class DeterminizeContext {
 public:
  DeterminizeContext(const Nft& m, std::size_t bound);

  const Nft& machine() const { return *m_; }
  std::size_t bound() const { return bound_; }
  std::size_t speed() const { return speed_; }
  // Buffer length bound: speed + bound.
  std::size_t capacity() const { return capacity_; }

  bool viable(int state, Word suffix, bool exact);

 private:
  const Nft* m_;
  std::size_t bound_;
  std::size_t speed_;
  std::size_t capacity_;
  std::map<std::tuple<int, Word, bool>, bool> cache_;
};

struct NormalizeResult {
  MacroState state;
  std::size_t dropped;  // symbols removed from the front of the buffer
};

// Sorts and dedupes the pairs, then strips the longest buffer prefix already
// produced by every run. Requires a nonempty pair set.
NormalizeResult normalize(std::vector<TrackedPair> pairs, Word z);

struct StepOutcome {
  std::optional<MacroState> next;  // nullopt: the run set died, go to sink
  Move m1 = Move::stay;
  Move m2 = Move::stay;
  std::uint64_t overflow_drops = 0;
};

// One macro transition on (input symbol, output symbol), either of which may
// be kBlank (exhausted tape) but not both. While the buffer has room and
// output remains, the output head advances and the new symbol is checked
// against every run's viable continuations; otherwise the input head advances
// and runs are stepped through delta, dropping runs whose produced output
// disagrees with the buffer or overruns it. Overruns with output still
// pending are counted as overflow drops: a larger bound might have kept them.
StepOutcome macro_step(DeterminizeContext& ctx, const MacroState& s,
                       int in_sym, int out_sym);

struct budget_error : std::runtime_error {
  std::size_t reached;
  explicit budget_error(std::size_t reached_)
      : std::runtime_error("state budget exceeded: " +
                           std::to_string(reached_) + " macro states"),
        reached(reached_) {}
};

struct DeterminizeResult {
  Tdfa automaton;
  // Aligned with automaton.states; nullopt for the sink.
  std::vector<std::optional<MacroState>> macro;
  std::uint64_t overflow_drops = 0;
  std::size_t speed = 0;
  std::size_t buffer_capacity = 0;
  int sink = -1;  // state index, -1 when unreachable
};

// Subset construction over macro states, breadth-first from the initial
// macro state; states are named m0, m1, ... in discovery order plus "sink".
// The result accepts exactly the pairs of the transducer whose runs respect
// the trailing bound; overflow_drops > 0 signals that some run was discarded
// for outrunning the buffer, i.e. the bound may have been too small.
DeterminizeResult determinize(const Nft& m, std::size_t bound,
                              std::size_t state_budget = 100000);

// "z=<buffer> P={(q,n),...}" with transducer state names.
std::string render_macro(const Nft& m, const MacroState& s);

struct Annotations {
  std::size_t speed = 0;
  std::size_t capacity = 0;
  std::uint64_t overflow_drops = 0;
  std::map<std::string, std::string> display;  // automaton state -> text
};

std::string render_annotations(const Nft& m, const DeterminizeResult& r);
Annotations parse_annotations(const std::string& text);

// Renders a two-tape run with macro state displays, collapsing consecutive
// output steps: the shown states are the initial one, every state entered by
// an input step, and every state about to take an input step (or final).
std::string macro_trace(const Tdfa& a, const Annotations& ann,
                        const TdfaTrace& trace);

}  // namespace xduce
