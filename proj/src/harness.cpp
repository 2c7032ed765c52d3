#include "xduce/harness.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "sweep.hpp"
#include "xduce/analysis.hpp"

namespace xduce {

namespace {

struct PairCanonical {
  const std::vector<Symbol>* in_alpha;
  const std::vector<Symbol>* out_alpha;

  int rank(const std::vector<Symbol>& alpha, const Symbol& s) const {
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] == s) return static_cast<int>(i);
    return static_cast<int>(alpha.size());
  }

  bool operator()(const std::pair<Word, Word>& x,
                  const std::pair<Word, Word>& y) const {
    auto in_rank = [&](const Symbol& s) { return rank(*in_alpha, s); };
    auto out_rank = [&](const Symbol& s) { return rank(*out_alpha, s); };
    if (ranked_word_less(x.first, y.first, in_rank)) return true;
    if (ranked_word_less(y.first, x.first, in_rank)) return false;
    return ranked_word_less(x.second, y.second, out_rank);
  }
};

struct RelationAcc {
  const Nft* m;
  std::size_t max_out;
  Relation items;

  void node(const Word& a, const detail::PairSet& pairs) {
    const Word* last = nullptr;
    for (const auto& p : pairs) {
      if (!m->accepting[p.state] || p.out.size() > max_out) continue;
      if (last && *last == p.out) continue;
      items.emplace_back(a, p.out);
      last = &p.out;
    }
  }

  void merge(RelationAcc&& o) {
    items.insert(items.end(), std::make_move_iterator(o.items.begin()),
                 std::make_move_iterator(o.items.end()));
  }
};

std::vector<char> tdfa_colive(const Tdfa& m) {
  std::size_t n = m.states.size();
  int n_in = static_cast<int>(m.input_alphabet.size());
  int n_out = static_cast<int>(m.output_alphabet.size());
  std::vector<std::vector<int>> rev(n);
  for (std::size_t q = 0; q < n; ++q)
    for (int i = 0; i <= n_in; ++i)
      for (int j = 0; j <= n_out; ++j) {
        if (i == n_in && j == n_out) continue;
        const auto& arc = m.arc(static_cast<int>(q), i < n_in ? i : kBlank,
                                j < n_out ? j : kBlank);
        if (arc) rev[arc->target].push_back(static_cast<int>(q));
      }
  std::vector<char> live(n, 0);
  std::deque<int> queue;
  for (std::size_t q = 0; q < n; ++q)
    if (m.accepting[q]) {
      live[q] = 1;
      queue.push_back(static_cast<int>(q));
    }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : rev[q])
      if (!live[p]) {
        live[p] = 1;
        queue.push_back(p);
      }
  }
  return live;
}

}  // namespace

Relation enumerate_relation(const Nft& m, Domain d, int jobs) {
  detail::SweepConfig cfg;
  cfg.m = &m;
  cfg.keep_state = co_reachable_mask(m);
  cfg.max_out = d.max_output;
  cfg.run_cap = 1;
  RelationAcc acc{&m, d.max_output, {}};
  acc = detail::sweep_all(cfg, d.max_input, jobs, std::move(acc));
  PairCanonical less{&m.input_alphabet, &m.output_alphabet};
  std::sort(acc.items.begin(), acc.items.end(), less);
  acc.items.erase(std::unique(acc.items.begin(), acc.items.end()),
                  acc.items.end());
  return std::move(acc.items);
}

Relation enumerate_relation(const Tdfa& m, Domain d) {
  std::vector<char> live = tdfa_colive(m);
  Relation out;
  Word a, u;
  auto rec = [&](auto&& self, int q, std::size_t i, std::size_t j,
                 bool a_done, bool u_done) -> void {
    if (!live[q]) return;
    if (i == a.size() && !a_done) {
      // Decide the input word's fate at the frontier: freeze it here or try
      // each single-symbol extension.
      self(self, q, i, j, true, u_done);
      if (a.size() < d.max_input)
        for (const Symbol& s : m.input_alphabet) {
          a.push_back(s);
          self(self, q, i, j, false, u_done);
          a.pop_back();
        }
      return;
    }
    if (j == u.size() && !u_done) {
      self(self, q, i, j, a_done, true);
      if (u.size() < d.max_output)
        for (const Symbol& s : m.output_alphabet) {
          u.push_back(s);
          self(self, q, i, j, a_done, false);
          u.pop_back();
        }
      return;
    }
    int in_sym = i < a.size() ? m.input_index(a[i]) : kBlank;
    int out_sym = j < u.size() ? m.output_index(u[j]) : kBlank;
    if (in_sym == kBlank && out_sym == kBlank) {
      if (m.accepting[q]) out.emplace_back(a, u);
      return;
    }
    const auto& arc = m.arc(q, in_sym, out_sym);
    if (!arc) return;
    self(self, arc->target, i + (arc->m1 == Move::advance ? 1 : 0),
         j + (arc->m2 == Move::advance ? 1 : 0), a_done, u_done);
  };
  rec(rec, m.initial, 0, 0, false, false);
  PairCanonical less{&m.input_alphabet, &m.output_alphabet};
  std::sort(out.begin(), out.end(), less);
  return out;
}

std::optional<Counterexample> check_equivalence(const Machine& m1,
                                                const Machine& m2, Domain d,
                                                int jobs) {
  auto alphabets =
      [](const Machine& m) -> std::pair<const std::vector<Symbol>*,
                                        const std::vector<Symbol>*> {
    if (const Nft* t = std::get_if<Nft>(&m))
      return {&t->input_alphabet, &t->output_alphabet};
    if (const Tdfa* t = std::get_if<Tdfa>(&m))
      return {&t->input_alphabet, &t->output_alphabet};
    throw validation_error(
        "equivalence checking needs transducers or two-tape automata");
  };
  auto [in1, out1] = alphabets(m1);
  auto [in2, out2] = alphabets(m2);
  if (*in1 != *in2 || *out1 != *out2)
    throw validation_error(
        "machines declare different alphabets; equivalence is only checked "
        "for identical declarations");

  auto enumerate = [&](const Machine& m) {
    if (const Nft* t = std::get_if<Nft>(&m))
      return enumerate_relation(*t, d, jobs);
    return enumerate_relation(std::get<Tdfa>(m), d);
  };
  Relation r1 = enumerate(m1);
  Relation r2 = enumerate(m2);

  PairCanonical less{in1, out1};
  std::size_t i = 0, j = 0;
  while (i < r1.size() || j < r2.size()) {
    if (j == r2.size() || (i < r1.size() && less(r1[i], r2[j]))) {
      return Counterexample{r1[i].first, r1[i].second, true, false};
    }
    if (i == r1.size() || less(r2[j], r1[i])) {
      return Counterexample{r2[j].first, r2[j].second, false, true};
    }
    ++i;
    ++j;
  }
  return std::nullopt;
}

Nft random_nft(std::uint64_t seed, std::size_t n_states,
               std::size_t n_symbols, std::size_t max_out, double density) {
  std::mt19937_64 gen(seed);
  Nft m;
  for (std::size_t q = 0; q < n_states; ++q)
    m.states.push_back("q" + std::to_string(q));
  for (std::size_t s = 0; s < n_symbols; ++s) {
    std::string tok = s < 26 ? std::string(1, static_cast<char>('a' + s))
                             : "x" + std::to_string(s);
    m.input_alphabet.push_back(Symbol(tok));
  }
  m.output_alphabet = m.input_alphabet;
  m.initial = 0;
  m.accepting.resize(n_states);
  for (std::size_t q = 0; q < n_states; ++q)
    m.accepting[q] = static_cast<char>(gen() & 1);
  // Fixed draw order keeps the machine identical across platforms.
  m.delta.assign(n_states, {});
  for (std::size_t q = 0; q < n_states; ++q) {
    m.delta[q].resize(n_symbols);
    for (std::size_t s = 0; s < n_symbols; ++s) {
      for (std::size_t t = 0; t < n_states; ++t) {
        double draw = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        if (draw >= density) continue;
        std::size_t len = max_out == 0 ? 0 : gen() % (max_out + 1);
        Word out;
        for (std::size_t k = 0; k < len; ++k)
          out.push_back(m.output_alphabet[gen() % n_symbols]);
        m.delta[q][s].push_back(
            {static_cast<int>(t), std::move(out)});
      }
    }
  }
  canonicalize(m);
  validate(m);
  return m;
}

}  // namespace xduce
