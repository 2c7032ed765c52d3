#include "sweep.hpp"

#include <algorithm>
#include <unordered_map>

namespace xduce::detail {

namespace {

struct PairLess {
  const Nft* m;
  bool operator()(const PairEntry& a, const PairEntry& b) const {
    if (a.out.size() != b.out.size()) return a.out.size() < b.out.size();
    for (std::size_t i = 0; i < a.out.size(); ++i) {
      int ra = m->output_index(a.out[i]);
      int rb = m->output_index(b.out[i]);
      if (ra != rb) return ra < rb;
    }
    return a.state < b.state;
  }
};

}  // namespace

void sort_pairs(const Nft& m, PairSet& pairs) {
  std::sort(pairs.begin(), pairs.end(), PairLess{&m});
}

PairSet root_pairs(const SweepConfig& cfg) {
  const Nft& m = *cfg.m;
  if (!cfg.keep_state.empty() && !cfg.keep_state[m.initial]) return {};
  return {PairEntry{m.initial, Word{}, 1}};
}

PairSet advance_pairs(const SweepConfig& cfg, const PairSet& pairs, int sym) {
  const Nft& m = *cfg.m;
  PairSet next;
  for (const PairEntry& p : pairs) {
    for (const Nft::Option& opt : m.options(p.state, sym)) {
      if (!cfg.keep_state.empty() && !cfg.keep_state[opt.target]) continue;
      if (p.out.size() + opt.out.size() > cfg.max_out) continue;
      PairEntry e{opt.target, p.out, p.runs};
      e.out.insert(e.out.end(), opt.out.begin(), opt.out.end());
      next.push_back(std::move(e));
    }
  }
  sort_pairs(m, next);
  // Merge duplicates: equal (output, state) entries differ only in run count.
  PairSet merged;
  for (PairEntry& e : next) {
    if (!merged.empty() && merged.back().state == e.state &&
        merged.back().out == e.out) {
      merged.back().runs =
          saturating_add(merged.back().runs, e.runs, cfg.run_cap);
    } else {
      merged.push_back(std::move(e));
    }
  }
  return merged;
}

namespace internal {

std::vector<std::pair<Word, PairSet>> expand_layer(const SweepConfig& cfg,
                                                   std::size_t depth) {
  std::vector<std::pair<Word, PairSet>> layer;
  PairSet root = root_pairs(cfg);
  if (root.empty()) return layer;
  std::size_t n_sym = cfg.m->input_alphabet.size();
  auto walk = [&](auto&& self, const Word& a, const PairSet& pairs,
                  std::size_t d) -> void {
    if (d == depth) {
      layer.emplace_back(a, pairs);
      return;
    }
    Word child = a;
    for (std::size_t s = 0; s < n_sym; ++s) {
      PairSet next = advance_pairs(cfg, pairs, static_cast<int>(s));
      if (next.empty()) continue;
      child.push_back(cfg.m->input_alphabet[s]);
      self(self, child, next, d + 1);
      child.pop_back();
    }
  };
  Word a;
  walk(walk, a, root, 0);
  return layer;
}

}  // namespace internal

}  // namespace xduce::detail
