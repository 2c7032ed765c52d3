#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "xduce/words.hpp"

namespace xduce {

struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Orders words by length, then pointwise by symbol rank. Rank maps a symbol
// to its index in the relevant alphabet.
template <class Rank>
bool ranked_word_less(const Word& a, const Word& b, Rank rank) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = rank(a[i]);
    int rb = rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

// Head moves of a two-tape automaton.
enum class Move { stay, advance };

// Turing machine head moves.
enum class TmMove { left, right };

// Symbols are referred to by index into the declaring alphabet; kBlank stands
// for the tape end delimiter, which is never part of an alphabet.
inline constexpr int kBlank = -1;

// Nondeterministic finite transducer. For every state and input symbol,
// delta yields a finite set of (target, output word) options; the set may be
// empty. Options are kept sorted by (output length, output, target).
struct Nft {
  struct Option {
    int target = 0;
    Word out;
    friend bool operator==(const Option&, const Option&) = default;
  };

  std::vector<std::string> states;
  std::vector<Symbol> input_alphabet;
  std::vector<Symbol> output_alphabet;
  int initial = 0;
  std::vector<char> accepting;                         // one flag per state
  std::vector<std::vector<std::vector<Option>>> delta; // [state][input symbol]

  int state_index(const std::string& name) const;
  int input_index(const Symbol& s) const;   // -1 when undeclared
  int output_index(const Symbol& s) const;
  const std::vector<Option>& options(int state, int sym) const {
    return delta[state][sym];
  }
  std::size_t entry_count() const;

  friend bool operator==(const Nft&, const Nft&) = default;
};

// Deterministic two-tape automaton with one-way heads. delta is a partial map
// on (state, input symbol or blank, output symbol or blank); a step must
// advance at least one head and a head on blank cannot advance.
struct Tdfa {
  struct Arc {
    int target = 0;
    Move m1 = Move::stay;
    Move m2 = Move::stay;
    friend bool operator==(const Arc&, const Arc&) = default;
  };

  std::vector<std::string> states;
  std::vector<Symbol> input_alphabet;
  std::vector<Symbol> output_alphabet;
  int initial = 0;
  std::vector<char> accepting;
  // Indexed by state, then input symbol (|input| = blank), then output symbol
  // (|output| = blank).
  std::vector<std::optional<Arc>> arcs;

  int state_index(const std::string& name) const;
  int input_index(const Symbol& s) const;
  int output_index(const Symbol& s) const;
  // sym arguments use kBlank for the tape end.
  const std::optional<Arc>& arc(int state, int in_sym, int out_sym) const;
  void set_arc(int state, int in_sym, int out_sym, Arc a);
  std::size_t entry_count() const;

  friend bool operator==(const Tdfa&, const Tdfa&) = default;
};

// Deterministic single-tape Turing machine. The transition function is
// partial; it always writes a non-blank symbol and moves the head.
struct TuringMachine {
  struct Rule {
    int target = 0;
    int write = 0;  // alphabet index, never blank
    TmMove move = TmMove::right;
    friend bool operator==(const Rule&, const Rule&) = default;
  };

  std::vector<std::string> states;
  std::vector<Symbol> alphabet;  // working symbols, blank excluded
  int initial = 0;
  std::vector<char> accepting;
  // Indexed by state, then read symbol (|alphabet| = blank).
  std::vector<std::optional<Rule>> rules;

  int state_index(const std::string& name) const;
  int symbol_index(const Symbol& s) const;
  const std::optional<Rule>& rule(int state, int sym) const;  // kBlank allowed
  void set_rule(int state, int sym, Rule r);

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;
};

using Machine = std::variant<Nft, Tdfa, TuringMachine>;

// Throw validation_error on malformed machines (duplicate names, bad tokens,
// out-of-range indices, move constraint violations).
void validate(const Nft& m);
void validate(const Tdfa& m);
void validate(const TuringMachine& m);

Machine parse_machine(std::string_view text);
Nft parse_nft(std::string_view text);
Tdfa parse_tdfa(std::string_view text);
TuringMachine parse_tm(std::string_view text);

Machine load_machine(const std::string& path);

std::string serialize(const Nft& m);
std::string serialize(const Tdfa& m);
std::string serialize(const TuringMachine& m);
std::string serialize(const Machine& m);

// Re-sorts transition options into canonical order; parsers call this.
void canonicalize(Nft& m);

}  // namespace xduce
