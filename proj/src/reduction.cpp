#include "xduce/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xduce {

namespace {

// Shared token/state bookkeeping for the compiled transducer.
struct Builder {
  const TuringMachine& m;
  int n_sym;                // tape alphabet size; index n_sym encodes blank
  std::vector<Symbol> vocab;
  int sep, mode_copy, mode_step;  // vocab indices

  // Walker states. StepScan buffers the plain cell `a` seen just before the
  // head; StepHead has consumed a right-moving head writing `b` and will turn
  // the next cell into the head cell of state `a`; StepTail buffers the cell
  // token `a` once the head is done.
  enum class Kind {
    start,
    copy_scan,
    copy_head,
    copy_gap,
    copy_done,
    step_gap,
    step_done,
    step_scan,
    step_head,
    step_tail
  };
  struct Info {
    Kind kind;
    int a = -1;
    int b = -1;
    friend auto operator<=>(const Info&, const Info&) = default;
  };
  std::vector<std::string> names;
  std::vector<Info> infos;
  std::map<Info, int> ids;
  std::set<std::string> used_names;

  explicit Builder(const TuringMachine& tm)
      : m(tm), n_sym(static_cast<int>(tm.alphabet.size())) {}

  int plain_tok(int x) const { return x; }
  int head_tok(int q, int x) const {  // x == n_sym encodes blank
    return n_sym + q * (n_sym + 1) + x;
  }
  bool is_plain(int v) const { return v < n_sym; }
  bool is_head(int v) const { return v >= n_sym && v < sep; }
  std::pair<int, int> head_of(int v) const {
    return {(v - n_sym) / (n_sym + 1), (v - n_sym) % (n_sym + 1)};
  }

  int state(Kind kind, int a = -1, int b = -1) {
    Info info{kind, a, b};
    auto it = ids.find(info);
    if (it != ids.end()) return it->second;
    std::string name;
    switch (kind) {
      case Kind::start: name = "start"; break;
      case Kind::copy_scan: name = "copy_scan"; break;
      case Kind::copy_head: name = "copy_head"; break;
      case Kind::copy_gap: name = "copy_gap"; break;
      case Kind::copy_done: name = "copy_done"; break;
      case Kind::step_gap: name = "step_gap"; break;
      case Kind::step_done: name = "step_done"; break;
      case Kind::step_scan:
        name = "step_scan_" + vocab[a].text;
        break;
      case Kind::step_head:
        name = "step_head_" + m.states[a] + "_" + vocab[plain_tok(b)].text;
        break;
      case Kind::step_tail:
        name = "step_tail_" + vocab[a].text;
        break;
    }
    std::string unique = name;
    for (int k = 2; used_names.count(unique); ++k)
      unique = name + "~" + std::to_string(k);
    used_names.insert(unique);
    int id = static_cast<int>(names.size());
    names.push_back(unique);
    infos.push_back(info);
    ids.emplace(info, id);
    return id;
  }

  // Reading vocab index v as the first cell of a configuration in step mode:
  // the emission that becomes due plus the follow state, or nothing when the
  // configuration cannot have a successor.
  std::optional<std::pair<Word, int>> step_first(int v) {
    if (is_plain(v)) return {{Word{}, state(Kind::step_scan, v)}};
    if (!is_head(v)) return std::nullopt;
    auto [q, x] = head_of(v);
    if (m.accepting[q]) return std::nullopt;
    const auto& rule = m.rule(q, x == n_sym ? kBlank : x);
    if (!rule) return std::nullopt;
    if (rule->move == TmMove::right)
      return {{Word{}, state(Kind::step_head, rule->target, rule->write)}};
    // A left move at the leftmost cell grows the tape: the successor starts
    // with the head over a fresh blank.
    return {{Word{vocab[head_tok(rule->target, n_sym)]},
             state(Kind::step_tail, plain_tok(rule->write))}};
  }

  std::vector<Nft::Option> options(int id, int v) {
    const Info info = infos[id];
    std::vector<Nft::Option> opts;
    auto add = [&](int target, Word out) {
      opts.push_back({target, std::move(out)});
    };
    Symbol tok = vocab[v];
    switch (info.kind) {
      case Kind::start:
        if (is_plain(v)) add(state(Kind::copy_scan), {tok});
        if (is_head(v)) add(state(Kind::copy_head), {tok});
        if (auto fc = step_first(v)) {
          Word out{vocab[head_tok(m.initial, n_sym)], vocab[sep]};
          out.insert(out.end(), fc->first.begin(), fc->first.end());
          add(fc->second, std::move(out));
        }
        break;
      case Kind::copy_scan:
        if (is_plain(v)) add(state(Kind::copy_scan), {tok});
        if (is_head(v)) add(state(Kind::copy_head), {tok});
        break;
      case Kind::copy_head:
        if (is_plain(v)) add(state(Kind::copy_head), {tok});
        if (v == sep) add(state(Kind::copy_gap), {tok});
        break;
      case Kind::copy_gap:
        if (is_plain(v)) add(state(Kind::copy_scan), {tok});
        if (is_head(v)) add(state(Kind::copy_head), {tok});
        if (v == mode_copy) add(state(Kind::copy_done), {});
        break;
      case Kind::step_gap:
        if (v == mode_step) {
          add(state(Kind::step_done), {});
        } else if (auto fc = step_first(v)) {
          add(fc->second, fc->first);
        }
        break;
      case Kind::step_scan:
        if (is_plain(v)) {
          add(state(Kind::step_scan, v), {vocab[info.a]});
        } else if (is_head(v)) {
          auto [q, x] = head_of(v);
          if (m.accepting[q]) break;
          const auto& rule = m.rule(q, x == n_sym ? kBlank : x);
          if (!rule) break;
          if (rule->move == TmMove::right)
            add(state(Kind::step_head, rule->target, rule->write),
                {vocab[info.a]});
          else
            // The buffered cell becomes the head cell of the successor.
            add(state(Kind::step_tail, plain_tok(rule->write)),
                {vocab[head_tok(rule->target, info.a)]});
        }
        break;
      case Kind::step_head:
        if (is_plain(v)) {
          add(state(Kind::step_tail, head_tok(info.a, v)),
              {vocab[plain_tok(info.b)]});
        } else if (v == sep) {
          // The head was rightmost; the successor gains a blank head cell.
          add(state(Kind::step_gap),
              {vocab[plain_tok(info.b)], vocab[head_tok(info.a, n_sym)],
               vocab[sep]});
        }
        break;
      case Kind::step_tail:
        if (is_plain(v)) {
          add(state(Kind::step_tail, v), {vocab[info.a]});
        } else if (v == sep) {
          add(state(Kind::step_gap), {vocab[info.a], vocab[sep]});
        }
        break;
      case Kind::copy_done:
      case Kind::step_done:
        break;
    }
    return opts;
  }
};

}  // namespace

Word encode_configuration(const TuringMachine& m, const Configuration& c) {
  Word w;
  for (const Cell& cell : c.cells) {
    if (cell.head)
      w.push_back(Symbol(m.states[cell.state] + "@" +
                         (cell.symbol == kBlank ? "."
                                                : m.alphabet[cell.symbol].text)));
    else
      w.push_back(m.alphabet[cell.symbol]);
  }
  return w;
}

ReductionNft tm_to_nft(const TuringMachine& m) {
  validate(m);
  Builder b(m);

  for (const Symbol& s : m.alphabet) b.vocab.push_back(s);
  for (const std::string& q : m.states)
    for (int x = 0; x <= b.n_sym; ++x)
      b.vocab.push_back(
          Symbol(q + "@" + (x < b.n_sym ? m.alphabet[x].text : ".")));
  b.sep = static_cast<int>(b.vocab.size());
  b.vocab.push_back(Symbol(";;"));
  b.mode_copy = static_cast<int>(b.vocab.size());
  b.vocab.push_back(Symbol("copy"));
  b.mode_step = static_cast<int>(b.vocab.size());
  b.vocab.push_back(Symbol("step"));

  std::set<std::string> seen;
  for (const Symbol& s : b.vocab) {
    std::string why;
    if (!valid_symbol_token(s.text, &why))
      throw validation_error("reduction token '" + s.text + "': " + why);
    if (!seen.insert(s.text).second)
      throw validation_error("reduction token collision: '" + s.text + "'");
  }

  b.state(Builder::Kind::start);
  std::vector<std::vector<std::vector<Nft::Option>>> delta;
  for (std::size_t id = 0; id < b.names.size(); ++id) {
    delta.resize(std::max(delta.size(), id + 1));
    delta[id].resize(b.vocab.size());
    for (std::size_t v = 0; v < b.vocab.size(); ++v)
      delta[id][v] = b.options(static_cast<int>(id), static_cast<int>(v));
  }
  delta.resize(b.names.size());
  for (auto& row : delta) row.resize(b.vocab.size());

  ReductionNft r;
  r.nft.states = b.names;
  r.nft.input_alphabet = b.vocab;
  r.nft.output_alphabet = b.vocab;
  r.nft.initial = 0;
  r.nft.accepting.assign(b.names.size(), 0);
  for (std::size_t id = 0; id < b.infos.size(); ++id)
    if (b.infos[id].kind == Builder::Kind::copy_done ||
        b.infos[id].kind == Builder::Kind::step_done)
      r.nft.accepting[id] = 1;
  r.nft.delta = std::move(delta);
  canonicalize(r.nft);
  validate(r.nft);

  for (int x = 0; x < b.n_sym; ++x)
    r.legend.emplace_back(b.vocab[x].text,
                          "tape symbol " + m.alphabet[x].text);
  for (std::size_t q = 0; q < m.states.size(); ++q)
    for (int x = 0; x <= b.n_sym; ++x)
      r.legend.emplace_back(
          b.vocab[b.head_tok(static_cast<int>(q), x)].text,
          "head in state " + m.states[q] + " over " +
              (x < b.n_sym ? m.alphabet[x].text : "blank"));
  r.legend.emplace_back(";;", "configuration separator");
  r.legend.emplace_back("copy", "mode: echo the stream");
  r.legend.emplace_back("step", "mode: advance the stream");
  return r;
}

namespace {

Word stream_of(const TuringMachine& m, std::size_t n_configs,
               const char* what) {
  Word w;
  Configuration c = tm_initial_configuration(m);
  for (std::size_t i = 0;; ++i) {
    Word cells = encode_configuration(m, c);
    w.insert(w.end(), cells.begin(), cells.end());
    w.push_back(Symbol(";;"));
    if (i + 1 == n_configs) break;
    auto next = tm_step(m, c);
    if (!next)
      throw std::runtime_error(std::string(what) + ": machine halts after " +
                               std::to_string(i) + " steps");
    c = std::move(*next);
  }
  return w;
}

}  // namespace

Word build_reduction_input(const TuringMachine& m, std::size_t k,
                           ReductionMode mode) {
  Word w = stream_of(m, k + 1, "run too short");
  w.push_back(Symbol(mode == ReductionMode::copy ? "copy" : "step"));
  return w;
}

Word expected_reduction_output(const TuringMachine& m, std::size_t k,
                               ReductionMode mode) {
  return stream_of(m, mode == ReductionMode::copy ? k + 1 : k + 2,
                   "run too short");
}

std::string serialize_with_legend(const ReductionNft& r) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& [tok, _] : r.legend) width = std::max(width, tok.size());
  out << "# legend:\n";
  for (const auto& [tok, meaning] : r.legend) {
    out << "#   " << tok;
    for (std::size_t i = tok.size(); i < width + 2; ++i) out << ' ';
    out << meaning << "\n";
  }
  out << serialize(r.nft);
  return out.str();
}

}  // namespace xduce
