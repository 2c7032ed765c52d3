#include "xduce/machines.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace xduce {

namespace {

int find_name(const std::vector<std::string>& names, const std::string& n) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return static_cast<int>(i);
  return -1;
}

int find_symbol(const std::vector<Symbol>& alpha, const Symbol& s) {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] == s) return static_cast<int>(i);
  return -1;
}

// Compares output words by (length, per-symbol alphabet rank).
struct WordRank {
  const std::vector<Symbol>& alpha;
  int rank(const Symbol& s) const { return find_symbol(alpha, s); }
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      int ra = rank(a[i]), rb = rank(b[i]);
      if (ra != rb) return ra < rb;
    }
    return false;
  }
};

void check_token(const std::string& tok, const char* what) {
  std::string why;
  if (!valid_symbol_token(tok, &why))
    throw validation_error(std::string(what) + " '" + tok + "': " + why);
}

void check_names_and_alphabet(const std::vector<std::string>& states,
                              const std::vector<Symbol>& alpha,
                              const char* alpha_name) {
  if (states.empty()) throw validation_error("machine has no states");
  std::set<std::string> seen;
  for (const auto& s : states) {
    check_token(s, "bad state id");
    if (!seen.insert(s).second)
      throw validation_error("duplicate state id '" + s + "'");
  }
  std::set<std::string> asyms;
  for (const auto& s : alpha) {
    check_token(s.text, "bad symbol");
    if (!asyms.insert(s.text).second)
      throw validation_error(std::string("duplicate symbol '") + s.text +
                             "' in " + alpha_name);
  }
}

}  // namespace

int Nft::state_index(const std::string& name) const {
  return find_name(states, name);
}
int Nft::input_index(const Symbol& s) const {
  return find_symbol(input_alphabet, s);
}
int Nft::output_index(const Symbol& s) const {
  return find_symbol(output_alphabet, s);
}
std::size_t Nft::entry_count() const {
  std::size_t n = 0;
  for (const auto& row : delta)
    for (const auto& opts : row) n += opts.size();
  return n;
}

int Tdfa::state_index(const std::string& name) const {
  return find_name(states, name);
}
int Tdfa::input_index(const Symbol& s) const {
  return find_symbol(input_alphabet, s);
}
int Tdfa::output_index(const Symbol& s) const {
  return find_symbol(output_alphabet, s);
}

static std::size_t tdfa_slot(const Tdfa& m, int state, int in_sym,
                             int out_sym) {
  std::size_t ni = m.input_alphabet.size() + 1;
  std::size_t no = m.output_alphabet.size() + 1;
  std::size_t i = in_sym == kBlank ? ni - 1 : static_cast<std::size_t>(in_sym);
  std::size_t o =
      out_sym == kBlank ? no - 1 : static_cast<std::size_t>(out_sym);
  return (static_cast<std::size_t>(state) * ni + i) * no + o;
}

const std::optional<Tdfa::Arc>& Tdfa::arc(int state, int in_sym,
                                          int out_sym) const {
  return arcs[tdfa_slot(*this, state, in_sym, out_sym)];
}
void Tdfa::set_arc(int state, int in_sym, int out_sym, Arc a) {
  arcs[tdfa_slot(*this, state, in_sym, out_sym)] = a;
}
std::size_t Tdfa::entry_count() const {
  std::size_t n = 0;
  for (const auto& a : arcs)
    if (a) ++n;
  return n;
}

int TuringMachine::state_index(const std::string& name) const {
  return find_name(states, name);
}
int TuringMachine::symbol_index(const Symbol& s) const {
  return find_symbol(alphabet, s);
}

static std::size_t tm_slot(const TuringMachine& m, int state, int sym) {
  std::size_t ns = m.alphabet.size() + 1;
  std::size_t s = sym == kBlank ? ns - 1 : static_cast<std::size_t>(sym);
  return static_cast<std::size_t>(state) * ns + s;
}

const std::optional<TuringMachine::Rule>& TuringMachine::rule(int state,
                                                              int sym) const {
  return rules[tm_slot(*this, state, sym)];
}
void TuringMachine::set_rule(int state, int sym, Rule r) {
  rules[tm_slot(*this, state, sym)] = r;
}

void validate(const Nft& m) {
  check_names_and_alphabet(m.states, m.input_alphabet, "input alphabet");
  check_names_and_alphabet(m.states, m.output_alphabet, "output alphabet");
  if (m.initial < 0 || m.initial >= static_cast<int>(m.states.size()))
    throw validation_error("initial state out of range");
  if (m.accepting.size() != m.states.size())
    throw validation_error("accepting flags out of shape");
  if (m.delta.size() != m.states.size())
    throw validation_error("transition table out of shape");
  for (const auto& row : m.delta) {
    if (row.size() != m.input_alphabet.size())
      throw validation_error("transition table out of shape");
    for (const auto& opts : row)
      for (const auto& o : opts) {
        if (o.target < 0 || o.target >= static_cast<int>(m.states.size()))
          throw validation_error("transition target out of range");
        for (const Symbol& s : o.out)
          if (find_symbol(m.output_alphabet, s) < 0)
            throw validation_error("undeclared output symbol '" + s.text +
                                   "'");
      }
  }
}

void validate(const Tdfa& m) {
  check_names_and_alphabet(m.states, m.input_alphabet, "input alphabet");
  check_names_and_alphabet(m.states, m.output_alphabet, "output alphabet");
  if (m.initial < 0 || m.initial >= static_cast<int>(m.states.size()))
    throw validation_error("initial state out of range");
  if (m.accepting.size() != m.states.size())
    throw validation_error("accepting flags out of shape");
  std::size_t want = m.states.size() * (m.input_alphabet.size() + 1) *
                     (m.output_alphabet.size() + 1);
  if (m.arcs.size() != want)
    throw validation_error("transition table out of shape");
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    for (int i = 0; i <= static_cast<int>(m.input_alphabet.size()); ++i) {
      for (int o = 0; o <= static_cast<int>(m.output_alphabet.size()); ++o) {
        int in_sym = i == static_cast<int>(m.input_alphabet.size()) ? kBlank : i;
        int out_sym =
            o == static_cast<int>(m.output_alphabet.size()) ? kBlank : o;
        const auto& a = m.arc(static_cast<int>(q), in_sym, out_sym);
        if (!a) continue;
        if (a->target < 0 || a->target >= static_cast<int>(m.states.size()))
          throw validation_error("transition target out of range");
        if (in_sym == kBlank && out_sym == kBlank)
          throw validation_error(
              "transition on two exhausted tapes is not allowed");
        if (in_sym == kBlank && a->m1 == Move::advance)
          throw validation_error("input head cannot advance past the end");
        if (out_sym == kBlank && a->m2 == Move::advance)
          throw validation_error("output head cannot advance past the end");
        if (a->m1 == Move::stay && a->m2 == Move::stay)
          throw validation_error("no head advances");
      }
    }
  }
}

void validate(const TuringMachine& m) {
  check_names_and_alphabet(m.states, m.alphabet, "alphabet");
  if (m.alphabet.empty()) throw validation_error("alphabet must be nonempty");
  if (m.initial < 0 || m.initial >= static_cast<int>(m.states.size()))
    throw validation_error("initial state out of range");
  if (m.accepting.size() != m.states.size())
    throw validation_error("accepting flags out of shape");
  if (m.rules.size() != m.states.size() * (m.alphabet.size() + 1))
    throw validation_error("transition table out of shape");
  for (const auto& r : m.rules) {
    if (!r) continue;
    if (r->target < 0 || r->target >= static_cast<int>(m.states.size()))
      throw validation_error("transition target out of range");
    if (r->write < 0 || r->write >= static_cast<int>(m.alphabet.size()))
      throw validation_error("written symbol out of range");
  }
}

void canonicalize(Nft& m) {
  WordRank rank{m.output_alphabet};
  for (auto& row : m.delta)
    for (auto& opts : row) {
      std::sort(opts.begin(), opts.end(),
                [&](const Nft::Option& a, const Nft::Option& b) {
                  if (rank(a.out, b.out)) return true;
                  if (rank(b.out, a.out)) return false;
                  return a.target < b.target;
                });
      opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line l{number, {}};
    std::istringstream ss{std::string(raw)};
    std::string tok;
    while (ss >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(tokenize(text)) {}

  bool done() const { return idx_ >= lines_.size(); }
  const Line& peek() const { return lines_[idx_]; }
  const Line& next() { return lines_[idx_++]; }
  int line_number() const {
    return done() ? (lines_.empty() ? 1 : lines_.back().number) : peek().number;
  }

  // Consumes a header line "key tok tok ..." and returns its payload tokens.
  std::vector<std::string> header(const std::string& key, bool allow_empty) {
    if (done())
      throw parse_error(line_number(), "expected '" + key + "' line");
    const Line& l = next();
    if (l.tokens[0] != key)
      throw parse_error(l.number, "expected '" + key + "' line, got '" +
                                      l.tokens[0] + "'");
    if (l.tokens.size() == 1 && !allow_empty)
      throw parse_error(l.number, "'" + key + "' line needs at least one entry");
    return {l.tokens.begin() + 1, l.tokens.end()};
  }

 private:
  std::vector<Line> lines_;
  std::size_t idx_ = 0;
};

std::vector<Symbol> to_symbols(const std::vector<std::string>& toks, int line) {
  std::vector<Symbol> out;
  for (const auto& t : toks) {
    std::string why;
    if (!valid_symbol_token(t, &why))
      throw parse_error(line, "bad symbol '" + t + "': " + why);
    out.emplace_back(t);
  }
  return out;
}

int state_or_throw(const std::vector<std::string>& states,
                   const std::string& name, int line) {
  int i = find_name(states, name);
  if (i < 0) throw parse_error(line, "undeclared state '" + name + "'");
  return i;
}

// Resolves a symbol token against an alphabet; "." means blank when
// `allow_blank`.
int symbol_or_throw(const std::vector<Symbol>& alpha, const std::string& tok,
                    bool allow_blank, int line) {
  if (tok == ".") {
    if (allow_blank) return kBlank;
    throw parse_error(line, "'.' is not allowed here");
  }
  int i = find_symbol(alpha, Symbol(tok));
  if (i < 0) throw parse_error(line, "undeclared symbol '" + tok + "'");
  return i;
}

Word word_or_throw(const std::vector<Symbol>& alpha, const std::string& tok,
                   int line) {
  Word w;
  try {
    w = parse_word(tok);
  } catch (const word_error& e) {
    throw parse_error(line, e.what());
  }
  for (const Symbol& s : w)
    if (find_symbol(alpha, s) < 0)
      throw parse_error(line, "undeclared symbol '" + s.text + "' in word");
  return w;
}

std::string machine_kind(Reader& r) {
  auto kind = r.header("machine", false);
  if (kind.size() != 1)
    throw parse_error(r.line_number(), "'machine' line needs exactly one kind");
  return kind[0];
}

std::vector<char> accept_flags(const std::vector<std::string>& states,
                               const std::vector<std::string>& names,
                               int line) {
  std::vector<char> flags(states.size(), 0);
  for (const auto& n : names) flags[state_or_throw(states, n, line)] = 1;
  return flags;
}

Nft parse_nft_body(Reader& r) {
  Nft m;
  int line = r.line_number();
  m.states = r.header("states", false);
  line = r.line_number();
  m.input_alphabet = to_symbols(r.header("input", false), line);
  line = r.line_number();
  m.output_alphabet = to_symbols(r.header("output", false), line);
  line = r.line_number();
  auto init = r.header("initial", false);
  if (init.size() != 1) throw parse_error(line, "need exactly one initial state");
  m.initial = state_or_throw(m.states, init[0], line);
  line = r.line_number();
  m.accepting = accept_flags(m.states, r.header("accept", true), line);
  m.delta.assign(m.states.size(),
                 std::vector<std::vector<Nft::Option>>(m.input_alphabet.size()));
  while (!r.done()) {
    const Line& l = r.next();
    if (l.tokens[0] != "t")
      throw parse_error(l.number, "expected transition line starting with 't'");
    if (l.tokens.size() != 5)
      throw parse_error(l.number,
                        "transducer transition needs: t state in next output");
    int q = state_or_throw(m.states, l.tokens[1], l.number);
    int a = symbol_or_throw(m.input_alphabet, l.tokens[2], false, l.number);
    int q2 = state_or_throw(m.states, l.tokens[3], l.number);
    Word w = word_or_throw(m.output_alphabet, l.tokens[4], l.number);
    m.delta[q][a].push_back({q2, std::move(w)});
  }
  canonicalize(m);
  try {
    validate(m);
  } catch (const validation_error& e) {
    throw parse_error(1, e.what());
  }
  return m;
}

Move move_or_throw(const std::string& tok, int line) {
  if (tok == "S") return Move::stay;
  if (tok == "A") return Move::advance;
  throw parse_error(line, "head move must be S or A, got '" + tok + "'");
}

Tdfa parse_tdfa_body(Reader& r) {
  Tdfa m;
  int line = r.line_number();
  m.states = r.header("states", false);
  line = r.line_number();
  m.input_alphabet = to_symbols(r.header("input", false), line);
  line = r.line_number();
  m.output_alphabet = to_symbols(r.header("output", false), line);
  line = r.line_number();
  auto init = r.header("initial", false);
  if (init.size() != 1) throw parse_error(line, "need exactly one initial state");
  m.initial = state_or_throw(m.states, init[0], line);
  line = r.line_number();
  m.accepting = accept_flags(m.states, r.header("accept", true), line);
  m.arcs.assign(m.states.size() * (m.input_alphabet.size() + 1) *
                    (m.output_alphabet.size() + 1),
                std::nullopt);
  while (!r.done()) {
    const Line& l = r.next();
    if (l.tokens[0] != "t")
      throw parse_error(l.number, "expected transition line starting with 't'");
    if (l.tokens.size() != 7)
      throw parse_error(l.number,
                        "automaton transition needs: t state in out next m1 m2");
    int q = state_or_throw(m.states, l.tokens[1], l.number);
    int a = symbol_or_throw(m.input_alphabet, l.tokens[2], true, l.number);
    int b = symbol_or_throw(m.output_alphabet, l.tokens[3], true, l.number);
    int q2 = state_or_throw(m.states, l.tokens[4], l.number);
    Move m1 = move_or_throw(l.tokens[5], l.number);
    Move m2 = move_or_throw(l.tokens[6], l.number);
    if (a == kBlank && b == kBlank)
      throw parse_error(l.number,
                        "transition on two exhausted tapes is not allowed");
    if (a == kBlank && m1 == Move::advance)
      throw parse_error(l.number, "input head cannot advance past the end");
    if (b == kBlank && m2 == Move::advance)
      throw parse_error(l.number, "output head cannot advance past the end");
    if (m1 == Move::stay && m2 == Move::stay)
      throw parse_error(l.number, "no head advances");
    if (m.arc(q, a, b))
      throw parse_error(l.number, "duplicate transition key");
    m.set_arc(q, a, b, {q2, m1, m2});
  }
  try {
    validate(m);
  } catch (const validation_error& e) {
    throw parse_error(1, e.what());
  }
  return m;
}

TuringMachine parse_tm_body(Reader& r) {
  TuringMachine m;
  int line = r.line_number();
  m.states = r.header("states", false);
  line = r.line_number();
  m.alphabet = to_symbols(r.header("alphabet", false), line);
  line = r.line_number();
  auto init = r.header("initial", false);
  if (init.size() != 1) throw parse_error(line, "need exactly one initial state");
  m.initial = state_or_throw(m.states, init[0], line);
  line = r.line_number();
  m.accepting = accept_flags(m.states, r.header("accept", true), line);
  m.rules.assign(m.states.size() * (m.alphabet.size() + 1), std::nullopt);
  while (!r.done()) {
    const Line& l = r.next();
    if (l.tokens[0] != "t")
      throw parse_error(l.number, "expected transition line starting with 't'");
    if (l.tokens.size() != 6)
      throw parse_error(l.number,
                        "machine transition needs: t state read next write move");
    int q = state_or_throw(m.states, l.tokens[1], l.number);
    int a = symbol_or_throw(m.alphabet, l.tokens[2], true, l.number);
    int q2 = state_or_throw(m.states, l.tokens[3], l.number);
    int w = symbol_or_throw(m.alphabet, l.tokens[4], false, l.number);
    TmMove mv;
    if (l.tokens[5] == "L")
      mv = TmMove::left;
    else if (l.tokens[5] == "R")
      mv = TmMove::right;
    else
      throw parse_error(l.number, "head move must be L or R");
    if (m.rule(q, a))
      throw parse_error(l.number, "duplicate transition key");
    m.set_rule(q, a, {q2, w, mv});
  }
  try {
    validate(m);
  } catch (const validation_error& e) {
    throw parse_error(1, e.what());
  }
  return m;
}

}  // namespace

Machine parse_machine(std::string_view text) {
  Reader r(text);
  std::string kind = machine_kind(r);
  if (kind == "nft") return parse_nft_body(r);
  if (kind == "tdfa") return parse_tdfa_body(r);
  if (kind == "tm") return parse_tm_body(r);
  throw parse_error(1, "unknown machine kind '" + kind + "'");
}

Nft parse_nft(std::string_view text) {
  Machine m = parse_machine(text);
  if (auto* p = std::get_if<Nft>(&m)) return std::move(*p);
  throw parse_error(1, "expected a transducer (machine nft)");
}

Tdfa parse_tdfa(std::string_view text) {
  Machine m = parse_machine(text);
  if (auto* p = std::get_if<Tdfa>(&m)) return std::move(*p);
  throw parse_error(1, "expected a two-tape automaton (machine tdfa)");
}

TuringMachine parse_tm(std::string_view text) {
  Machine m = parse_machine(text);
  if (auto* p = std::get_if<TuringMachine>(&m)) return std::move(*p);
  throw parse_error(1, "expected a Turing machine (machine tm)");
}

Machine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization (canonical: declaration order, sorted transitions)

namespace {

void put_names(std::ostringstream& out, const char* key,
               const std::vector<std::string>& names) {
  out << key;
  for (const auto& n : names) out << ' ' << n;
  out << '\n';
}

void put_symbols(std::ostringstream& out, const char* key,
                 const std::vector<Symbol>& alpha) {
  out << key;
  for (const auto& s : alpha) out << ' ' << s.text;
  out << '\n';
}

void put_accepting(std::ostringstream& out,
                   const std::vector<std::string>& states,
                   const std::vector<char>& accepting) {
  out << "accept";
  for (std::size_t i = 0; i < states.size(); ++i)
    if (accepting[i]) out << ' ' << states[i];
  out << '\n';
}

std::string sym_or_blank(const std::vector<Symbol>& alpha, int sym) {
  return sym == kBlank ? "." : alpha[sym].text;
}

}  // namespace

std::string serialize(const Nft& m) {
  std::ostringstream out;
  out << "machine nft\n";
  put_names(out, "states", m.states);
  put_symbols(out, "input", m.input_alphabet);
  put_symbols(out, "output", m.output_alphabet);
  out << "initial " << m.states[m.initial] << '\n';
  put_accepting(out, m.states, m.accepting);
  bool single = single_char_alphabet(m.output_alphabet);
  for (std::size_t q = 0; q < m.states.size(); ++q)
    for (std::size_t a = 0; a < m.input_alphabet.size(); ++a)
      for (const auto& o : m.delta[q][a])
        out << "t " << m.states[q] << ' ' << m.input_alphabet[a].text << ' '
            << m.states[o.target] << ' ' << render_word(o.out, single) << '\n';
  return out.str();
}

std::string serialize(const Tdfa& m) {
  std::ostringstream out;
  out << "machine tdfa\n";
  put_names(out, "states", m.states);
  put_symbols(out, "input", m.input_alphabet);
  put_symbols(out, "output", m.output_alphabet);
  out << "initial " << m.states[m.initial] << '\n';
  put_accepting(out, m.states, m.accepting);
  int ni = static_cast<int>(m.input_alphabet.size());
  int no = static_cast<int>(m.output_alphabet.size());
  for (std::size_t q = 0; q < m.states.size(); ++q)
    for (int a = 0; a <= ni; ++a)
      for (int b = 0; b <= no; ++b) {
        int sa = a == ni ? kBlank : a;
        int sb = b == no ? kBlank : b;
        const auto& arc = m.arc(static_cast<int>(q), sa, sb);
        if (!arc) continue;
        out << "t " << m.states[q] << ' ' << sym_or_blank(m.input_alphabet, sa)
            << ' ' << sym_or_blank(m.output_alphabet, sb) << ' '
            << m.states[arc->target] << ' '
            << (arc->m1 == Move::advance ? 'A' : 'S') << ' '
            << (arc->m2 == Move::advance ? 'A' : 'S') << '\n';
      }
  return out.str();
}

std::string serialize(const TuringMachine& m) {
  std::ostringstream out;
  out << "machine tm\n";
  put_names(out, "states", m.states);
  put_symbols(out, "alphabet", m.alphabet);
  out << "initial " << m.states[m.initial] << '\n';
  put_accepting(out, m.states, m.accepting);
  int ns = static_cast<int>(m.alphabet.size());
  for (std::size_t q = 0; q < m.states.size(); ++q)
    for (int a = 0; a <= ns; ++a) {
      int sa = a == ns ? kBlank : a;
      const auto& r = m.rule(static_cast<int>(q), sa);
      if (!r) continue;
      out << "t " << m.states[q] << ' ' << sym_or_blank(m.alphabet, sa) << ' '
          << m.states[r->target] << ' ' << m.alphabet[r->write].text << ' '
          << (r->move == TmMove::right ? 'R' : 'L') << '\n';
    }
  return out.str();
}

std::string serialize(const Machine& m) {
  return std::visit([](const auto& x) { return serialize(x); }, m);
}

}  // namespace xduce
