#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xduce {

// A symbol is an opaque, non-empty token. Tokens never contain whitespace,
// '#' or ','; they never equal the reserved tokens "." (tape end delimiter)
// and "_" (empty word). ';' is banned too, except for the exact token ";;",
// which is reserved as the configuration separator of generated machines.
struct Symbol {
  std::string text;

  Symbol() = default;
  explicit Symbol(std::string t) : text(std::move(t)) {}
  explicit Symbol(std::string_view t) : text(t) {}
  explicit Symbol(const char* t) : text(t) {}

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// A word is a finite, possibly empty sequence of symbols.
using Word = std::vector<Symbol>;

struct word_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Returns true iff `token` is a legal symbol token; on failure *why names the
// violated rule.
bool valid_symbol_token(std::string_view token, std::string* why = nullptr);

// Longest common prefix of two words.
Word lcp(const Word& w1, const Word& w2);

// |w1| + |w2| - 2*|lcp(w1, w2)|.
std::size_t distance(const Word& w1, const Word& w2);

bool is_prefix(const Word& prefix, const Word& w);

// The suffix s with w = prefix . s, or nullopt when prefix is not a prefix
// of w.
std::optional<Word> strip_prefix(const Word& prefix, const Word& w);

Word concat(const Word& a, const Word& b);

// Text syntax: "_" is the empty word, "[tok,tok,...]" is the general form,
// anything else is split into one single-character symbol per character.
Word parse_word(std::string_view text);

bool single_char_alphabet(std::span<const Symbol> alphabet);

// Renders a word; plain concatenation when `single_char` (every symbol of the
// governing alphabet is one character), bracketed form otherwise.
std::string render_word(const Word& w, bool single_char);
std::string render_word(const Word& w, std::span<const Symbol> alphabet);

}  // namespace xduce
