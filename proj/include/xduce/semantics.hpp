#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xduce/machines.hpp"
#include "xduce/words.hpp"

namespace xduce {

// ---------------------------------------------------------------------------
// Transducer runs

// Decides (a, u) in L(T) by reachability over (state, matched prefix length
// of u); outputs are never materialized.
bool nft_membership(const Nft& m, const Word& a, const Word& u);

struct OutputSet {
  std::vector<Word> words;  // sorted by (length, per-symbol alphabet rank)
  bool truncated = false;
};

// All outputs of accepting runs on a, truncated at `cap` distinct words.
OutputSet nft_outputs(const Nft& m, const Word& a, std::uint64_t cap);

struct RunCount {
  std::uint64_t count = 0;
  bool truncated = false;
};

// Number of accepting runs producing exactly u on a, saturating at cap.
RunCount nft_accepting_run_count(const Nft& m, const Word& a, const Word& u,
                                 std::uint64_t cap);

// True iff some run from `from` reads `input`, emits `output` and ends in
// `to`. Used to replay search witnesses.
bool nft_run_exists(const Nft& m, int from, const Word& input,
                    const Word& output, int to);

// ---------------------------------------------------------------------------
// Two-tape automaton runs

struct TdfaTrace {
  struct Step {
    int state;            // state before the step
    std::size_t in_pos, out_pos;
    int read_in, read_out;  // alphabet indices, kBlank at tape end
    Move m1, m2;
  };
  std::vector<Step> steps;
  int final_state = 0;
  std::size_t final_in_pos = 0, final_out_pos = 0;
  bool accepted = false;
  // Set when the run stopped on a missing transition entry.
  bool missing_entry = false;
};

TdfaTrace tdfa_run(const Tdfa& m, const Word& a, const Word& u);

std::string render_trace(const Tdfa& m, const TdfaTrace& t);

// ---------------------------------------------------------------------------
// Turing machine runs

// A configuration is the non-blank tape segment as a cell sequence with the
// head folded into its cell. The head cell may hold the blank.
struct Cell {
  bool head = false;
  int state = 0;    // meaningful when head
  int symbol = 0;   // alphabet index; kBlank only under the head
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Configuration {
  std::vector<Cell> cells;
  std::size_t head_index() const;
  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

Configuration tm_initial_configuration(const TuringMachine& m);

// True when the scanned state is accepting or has no applicable rule.
bool tm_halting(const TuringMachine& m, const Configuration& c);

// One step; nullopt when c is halting.
std::optional<Configuration> tm_step(const TuringMachine& m,
                                     const Configuration& c);

enum class TmStatus { halted, looping, step_limit };

struct TmRun {
  std::vector<Configuration> configs;  // starts with the initial configuration
  TmStatus status = TmStatus::step_limit;
};

TmRun tm_run(const TuringMachine& m, std::size_t max_steps);

std::string render_configuration(const TuringMachine& m,
                                 const Configuration& c);

}  // namespace xduce
