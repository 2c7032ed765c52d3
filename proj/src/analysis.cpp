#include "xduce/analysis.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "sweep.hpp"
#include "xduce/semantics.hpp"

namespace xduce {

namespace {

// dist[q] = length of the shortest input leading from q to acceptance, or -1
// when no accepting continuation exists.
std::vector<long long> accept_distance(const Nft& m) {
  std::size_t n = m.states.size();
  std::vector<std::vector<int>> rev(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t s = 0; s < m.input_alphabet.size(); ++s)
      for (const Nft::Option& o : m.options(static_cast<int>(q),
                                            static_cast<int>(s)))
        rev[o.target].push_back(static_cast<int>(q));
  for (auto& v : rev) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  std::vector<long long> dist(n, -1);
  std::deque<int> queue;
  for (std::size_t q = 0; q < n; ++q)
    if (m.accepting[q]) {
      dist[q] = 0;
      queue.push_back(static_cast<int>(q));
    }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : rev[q])
      if (dist[p] < 0) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
  }
  return dist;
}

}  // namespace

std::vector<char> co_reachable_mask(const Nft& m) {
  auto dist = accept_distance(m);
  std::vector<char> mask(dist.size(), 0);
  for (std::size_t q = 0; q < dist.size(); ++q) mask[q] = dist[q] >= 0;
  return mask;
}

std::vector<int> co_reachable(const Nft& m) {
  auto mask = co_reachable_mask(m);
  std::vector<int> out;
  for (std::size_t q = 0; q < mask.size(); ++q)
    if (mask[q]) out.push_back(static_cast<int>(q));
  return out;
}

std::size_t output_speed(const Nft& m) {
  std::size_t speed = 0;
  for (const auto& per_state : m.delta)
    for (const auto& opts : per_state)
      for (const Nft::Option& o : opts) speed = std::max(speed, o.out.size());
  return speed;
}

std::size_t shortcut_guarantee(const Nft& m) {
  long long g = 0;
  for (long long d : accept_distance(m)) g = std::max(g, d);
  return static_cast<std::size_t>(g);
}

std::optional<Continuation> accepting_continuation(const Nft& m, int state,
                                                   const Word& prefix,
                                                   bool exact) {
  // Nodes are (reached state, matched prefix length). Matched length P means
  // the produced output already covers the whole prefix; from there, exact
  // mode only admits empty further output while prefix mode is unconstrained.
  std::size_t P = prefix.size();
  std::size_t n_nodes = m.states.size() * (P + 1);
  struct Parent {
    int node = -1;
    int sym = -1;
    int opt = -1;
  };
  std::vector<Parent> parent(n_nodes);
  std::vector<char> seen(n_nodes, 0);
  auto node_id = [&](int q, std::size_t k) {
    return static_cast<std::size_t>(q) * (P + 1) + k;
  };
  auto is_goal = [&](int q, std::size_t k) {
    return k == P && m.accepting[q];
  };

  std::size_t start = node_id(state, 0);
  seen[start] = 1;
  std::optional<std::size_t> hit;
  if (is_goal(state, 0)) hit = start;

  std::deque<std::size_t> queue{start};
  while (!hit && !queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    int q = static_cast<int>(cur / (P + 1));
    std::size_t k = cur % (P + 1);
    for (std::size_t s = 0; s < m.input_alphabet.size() && !hit; ++s) {
      const auto& opts = m.options(q, static_cast<int>(s));
      for (std::size_t oi = 0; oi < opts.size() && !hit; ++oi) {
        const Word& w = opts[oi].out;
        std::size_t k2;
        if (exact) {
          if (k + w.size() > P) continue;
          if (!std::equal(w.begin(), w.end(), prefix.begin() + k)) continue;
          k2 = k + w.size();
        } else {
          std::size_t overlap = std::min(P - k, w.size());
          if (!std::equal(w.begin(), w.begin() + overlap, prefix.begin() + k))
            continue;
          k2 = std::min(P, k + w.size());
        }
        std::size_t next = node_id(opts[oi].target, k2);
        if (seen[next]) continue;
        seen[next] = 1;
        parent[next] = {static_cast<int>(cur), static_cast<int>(s),
                        static_cast<int>(oi)};
        if (is_goal(opts[oi].target, k2))
          hit = next;
        else
          queue.push_back(next);
      }
    }
  }
  if (!hit) return std::nullopt;

  std::vector<std::pair<int, int>> hops;  // (input symbol, option) reversed
  std::size_t cur = *hit;
  while (parent[cur].node >= 0) {
    hops.emplace_back(parent[cur].sym, parent[cur].opt);
    cur = static_cast<std::size_t>(parent[cur].node);
  }
  std::reverse(hops.begin(), hops.end());

  Continuation c;
  int q = state;
  for (auto [sym, oi] : hops) {
    const Nft::Option& o = m.options(q, sym)[oi];
    c.input.push_back(m.input_alphabet[sym]);
    c.output.insert(c.output.end(), o.out.begin(), o.out.end());
    q = o.target;
  }
  c.final_state = q;
  return c;
}

namespace {

void verify_trailing(const Nft& m, std::size_t bound,
                     const TrailingWitness& w) {
  bool ok = w.v.size() > bound &&
            nft_run_exists(m, m.initial, w.a, concat(w.u, w.v), w.q1) &&
            nft_run_exists(m, m.initial, w.a, w.u, w.q2) &&
            nft_run_exists(m, w.q1, w.b1, w.w1, w.f1) && m.accepting[w.f1] &&
            nft_run_exists(m, w.q2, w.b2, concat(w.v, w.w2), w.f2) &&
            m.accepting[w.f2];
  if (!ok) throw std::logic_error("trailing witness failed replay");
}

void verify_variation(const Nft& m, std::size_t bound,
                      const VariationWitness& w,
                      const std::vector<char>& coreach) {
  bool ok = w.d == distance(w.o1, w.o2) && w.d > bound &&
            nft_run_exists(m, m.initial, w.a, w.o1, w.q1) &&
            nft_run_exists(m, m.initial, w.a, w.o2, w.q2) && coreach[w.q1] &&
            coreach[w.q2];
  if (!ok) throw std::logic_error("variation witness failed replay");
}

template <class W>
SearchResult<W> to_result(detail::LayeredOutcome<W>&& r) {
  SearchResult<W> out;
  out.nodes = r.nodes;
  if (r.witness) {
    out.status = SearchStatus::found;
    out.witness = std::move(r.witness);
  } else if (r.over_budget) {
    out.status = SearchStatus::budget_exceeded;
  } else {
    out.status = SearchStatus::absent;
  }
  return out;
}

}  // namespace

SearchResult<TrailingWitness> find_trailing_witness(
    const Nft& m, std::size_t bound, const SearchLimits& limits) {
  detail::SweepConfig cfg;
  cfg.m = &m;
  cfg.keep_state = co_reachable_mask(m);
  cfg.run_cap = 1;

  auto check = [&](const Word& a, const detail::PairSet& pairs)
      -> std::optional<TrailingWitness> {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Word& oi = pairs[i].out;
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        const Word& oj = pairs[j].out;
        if (oj.size() >= oi.size()) continue;
        if (!is_prefix(oj, oi)) continue;
        Word v(oi.begin() + static_cast<std::ptrdiff_t>(oj.size()), oi.end());
        if (v.size() <= bound) continue;
        auto c2 = accepting_continuation(m, pairs[j].state, v, false);
        if (!c2) continue;
        auto c1 = accepting_continuation(m, pairs[i].state, {}, false);
        if (!c1) continue;
        TrailingWitness w;
        w.a = a;
        w.u = oj;
        w.v = std::move(v);
        w.q1 = pairs[i].state;
        w.q2 = pairs[j].state;
        w.b1 = c1->input;
        w.w1 = c1->output;
        w.f1 = c1->final_state;
        w.b2 = c2->input;
        w.w2 = strip_prefix(w.v, c2->output).value();
        w.f2 = c2->final_state;
        verify_trailing(m, bound, w);
        return w;
      }
    }
    return std::nullopt;
  };

  return to_result(detail::layered_search<TrailingWitness>(
      cfg, limits.max_input, limits.node_budget, limits.jobs, check));
}

SearchResult<VariationWitness> find_variation_witness(
    const Nft& m, std::size_t bound, const SearchLimits& limits) {
  detail::SweepConfig cfg;
  cfg.m = &m;
  cfg.keep_state = co_reachable_mask(m);
  cfg.run_cap = 1;

  auto check = [&, coreach = cfg.keep_state](
                   const Word& a, const detail::PairSet& pairs)
      -> std::optional<VariationWitness> {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        std::size_t d = distance(pairs[i].out, pairs[j].out);
        if (d <= bound) continue;
        VariationWitness w;
        w.a = a;
        w.o1 = pairs[j].out;  // pairs are sorted, so o1 is the longer output
        w.o2 = pairs[i].out;
        w.q1 = pairs[j].state;
        w.q2 = pairs[i].state;
        w.d = d;
        verify_variation(m, bound, w, coreach);
        return w;
      }
    }
    return std::nullopt;
  };

  return to_result(detail::layered_search<VariationWitness>(
      cfg, limits.max_input, limits.node_budget, limits.jobs, check));
}

namespace {

struct ValuednessAcc {
  const Nft* m;
  std::uint64_t cap;
  std::uint64_t best = 0;
  bool truncated = false;
  std::optional<Word> witness;

  bool word_less(const Word& a, const Word& b) const {
    return ranked_word_less(a, b,
                            [&](const Symbol& s) { return m->input_index(s); });
  }

  void node(const Word& a, const detail::PairSet& pairs) {
    std::uint64_t k = 0;
    const Word* last = nullptr;
    for (const auto& p : pairs) {
      if (!m->accepting[p.state]) continue;
      if (last && *last == p.out) continue;
      k += 1;
      last = &p.out;
    }
    if (k > cap) {
      truncated = true;
      k = cap;
    }
    if (k == 0) return;
    if (k > best || (k == best && witness && word_less(a, *witness))) {
      best = k;
      witness = a;
    }
  }

  void merge(ValuednessAcc&& o) {
    truncated = truncated || o.truncated;
    if (o.best > best ||
        (o.best == best && o.witness &&
         (!witness || word_less(*o.witness, *witness)))) {
      best = o.best;
      witness = std::move(o.witness);
    }
  }
};

struct AmbiguityAcc {
  const Nft* m;
  std::size_t max_out;
  std::uint64_t cap;
  std::uint64_t best = 0;

  void node(const Word&, const detail::PairSet& pairs) {
    std::size_t i = 0;
    while (i < pairs.size()) {
      std::size_t j = i;
      std::uint64_t total = 0;
      bool any = false;
      while (j < pairs.size() && pairs[j].out == pairs[i].out) {
        if (m->accepting[pairs[j].state]) {
          total = detail::saturating_add(total, pairs[j].runs, cap);
          any = true;
        }
        ++j;
      }
      if (any && pairs[i].out.size() <= max_out) best = std::max(best, total);
      i = j;
    }
  }

  void merge(AmbiguityAcc&& o) { best = std::max(best, o.best); }
};

}  // namespace

ValuednessResult max_valuedness(const Nft& m, std::size_t max_input,
                                std::uint64_t cap, int jobs) {
  detail::SweepConfig cfg;
  cfg.m = &m;
  cfg.keep_state = co_reachable_mask(m);
  cfg.run_cap = 1;
  ValuednessAcc acc{&m, cap, 0, false, std::nullopt};
  acc = detail::sweep_all(cfg, max_input, jobs, std::move(acc));
  return ValuednessResult{acc.best, acc.truncated, std::move(acc.witness)};
}

std::uint64_t max_ambiguity(const Nft& m, std::size_t max_input,
                            std::size_t max_output, std::uint64_t cap,
                            int jobs) {
  detail::SweepConfig cfg;
  cfg.m = &m;
  cfg.keep_state = co_reachable_mask(m);
  cfg.max_out = max_output;
  cfg.run_cap = cap;
  AmbiguityAcc acc{&m, max_output, cap};
  acc = detail::sweep_all(cfg, max_input, jobs, std::move(acc));
  return acc.best;
}

std::string render_witness(const Nft& m, const TrailingWitness& w) {
  std::ostringstream out;
  auto in = [&](const Word& x) { return render_word(x, m.input_alphabet); };
  auto on = [&](const Word& x) { return render_word(x, m.output_alphabet); };
  out << "a = " << in(w.a) << "\n";
  out << "u = " << on(w.u) << "\n";
  out << "v = " << on(w.v) << "\n";
  out << "q1 = " << m.states[w.q1] << "\n";
  out << "q2 = " << m.states[w.q2] << "\n";
  out << "b1 = " << in(w.b1) << "\n";
  out << "w1 = " << on(w.w1) << "\n";
  out << "f1 = " << m.states[w.f1] << "\n";
  out << "b2 = " << in(w.b2) << "\n";
  out << "w2 = " << on(w.w2) << "\n";
  out << "f2 = " << m.states[w.f2] << "\n";
  return out.str();
}

std::string render_witness(const Nft& m, const VariationWitness& w) {
  std::ostringstream out;
  out << "a = " << render_word(w.a, m.input_alphabet) << "\n";
  out << "o1 = " << render_word(w.o1, m.output_alphabet) << "\n";
  out << "o2 = " << render_word(w.o2, m.output_alphabet) << "\n";
  out << "q1 = " << m.states[w.q1] << "\n";
  out << "q2 = " << m.states[w.q2] << "\n";
  out << "d = " << w.d << "\n";
  return out.str();
}

}  // namespace xduce
