#include "xduce/words.hpp"

#include <algorithm>
#include <cctype>

namespace xduce {

bool valid_symbol_token(std::string_view token, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (token.empty()) return fail("empty token");
  if (token == ".") return fail("'.' is reserved for the tape end delimiter");
  if (token == "_") return fail("'_' is reserved for the empty word");
  for (char c : token) {
    if (std::isspace(static_cast<unsigned char>(c)))
      return fail("token contains whitespace");
    if (c == '#') return fail("token contains '#'");
    if (c == ',') return fail("token contains ','");
    if (c == ';' && token != ";;")
      return fail("token contains ';' (only the separator token \";;\" may)");
  }
  return true;
}

Word lcp(const Word& w1, const Word& w2) {
  std::size_t n = std::min(w1.size(), w2.size());
  std::size_t i = 0;
  while (i < n && w1[i] == w2[i]) ++i;
  return Word(w1.begin(), w1.begin() + i);
}

std::size_t distance(const Word& w1, const Word& w2) {
  return w1.size() + w2.size() - 2 * lcp(w1, w2).size();
}

bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() &&
         std::equal(prefix.begin(), prefix.end(), w.begin());
}

std::optional<Word> strip_prefix(const Word& prefix, const Word& w) {
  if (!is_prefix(prefix, w)) return std::nullopt;
  return Word(w.begin() + prefix.size(), w.end());
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word parse_word(std::string_view text) {
  if (text == "_") return {};
  Word w;
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw word_error("unterminated '[' in word");
    std::string_view body = text.substr(1, text.size() - 2);
    if (body.empty()) throw word_error("empty brackets; write '_' for the empty word");
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = body.find(',', pos);
      std::string_view tok = body.substr(pos, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - pos);
      std::string why;
      if (!valid_symbol_token(tok, &why))
        throw word_error("bad symbol '" + std::string(tok) + "': " + why);
      w.emplace_back(std::string(tok));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return w;
  }
  for (char c : text) {
    std::string tok(1, c);
    std::string why;
    if (!valid_symbol_token(tok, &why))
      throw word_error("bad symbol '" + tok + "': " + why);
    w.emplace_back(std::move(tok));
  }
  return w;
}

bool single_char_alphabet(std::span<const Symbol> alphabet) {
  return std::all_of(alphabet.begin(), alphabet.end(),
                     [](const Symbol& s) { return s.text.size() == 1; });
}

std::string render_word(const Word& w, bool single_char) {
  if (w.empty()) return "_";
  std::string out;
  if (single_char) {
    for (const Symbol& s : w) out += s.text;
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += w[i].text;
  }
  out += ']';
  return out;
}

std::string render_word(const Word& w, std::span<const Symbol> alphabet) {
  return render_word(w, single_char_alphabet(alphabet));
}

}  // namespace xduce
