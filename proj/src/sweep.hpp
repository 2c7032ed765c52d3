#pragma once

// Shared input-tree sweep engine. Walks the tree of input words whose pair
// set (reachable state, produced output) is nonempty, pruning subtrees once
// every pair dies. Serial and OpenMP paths visit the same nodes and are
// required to produce identical results; the parallel path splits the tree at
// a shallow prefix layer and merges per-subtree results in subtree order.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xduce/machines.hpp"
#include "xduce/words.hpp"

namespace xduce::detail {

struct PairEntry {
  int state;
  Word out;
  std::uint64_t runs;
};
using PairSet = std::vector<PairEntry>;

struct SweepConfig {
  const Nft* m = nullptr;
  std::vector<char> keep_state;    // drop pairs outside this mask
  std::size_t max_out = static_cast<std::size_t>(-1);
  std::uint64_t run_cap = UINT64_MAX;
};

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b,
                                    std::uint64_t cap) {
  return a >= cap || b >= cap || a + b >= cap ? cap : a + b;
}

// Pairs sorted by (output length, output in alphabet rank order, state).
void sort_pairs(const Nft& m, PairSet& pairs);

PairSet root_pairs(const SweepConfig& cfg);
PairSet advance_pairs(const SweepConfig& cfg, const PairSet& pairs, int sym);

namespace internal {

// Live words of length exactly `depth`, paired with their pair sets, in
// lexicographic order. Used to seed parallel subtree walks.
std::vector<std::pair<Word, PairSet>> expand_layer(const SweepConfig& cfg,
                                                   std::size_t depth);

inline std::size_t split_depth(std::size_t limit, int jobs) {
  std::size_t d = 0;
  std::size_t want = static_cast<std::size_t>(jobs) * 4;
  std::size_t width = 1;
  while (d < limit && width < want) {
    d += 1;
    width *= 2;
  }
  return d;
}

}  // namespace internal

// Visits every live node with depth <= max_depth exactly once. Acc needs
// node(const Word&, const PairSet&) and merge(Acc&&); per-subtree copies of
// `init` are merged back in subtree order.
template <class Acc>
Acc sweep_all(const SweepConfig& cfg, std::size_t max_depth, int jobs,
              Acc init) {
  PairSet root = root_pairs(cfg);
  if (root.empty()) return init;

  std::size_t n_sym = cfg.m->input_alphabet.size();
  auto walk = [&](auto&& self, const Word& a, const PairSet& pairs,
                  Acc& acc) -> void {
    acc.node(a, pairs);
    if (a.size() >= max_depth) return;
    Word child = a;
    for (std::size_t s = 0; s < n_sym; ++s) {
      PairSet next = advance_pairs(cfg, pairs, static_cast<int>(s));
      if (next.empty()) continue;
      child.push_back(cfg.m->input_alphabet[s]);
      self(self, child, next, acc);
      child.pop_back();
    }
  };

#ifdef _OPENMP
  if (jobs > 1 && max_depth > 0) {
    Acc blank(init);
    std::size_t split = internal::split_depth(max_depth, jobs);
    // Nodes above and on the split line are visited here, serially.
    Word a;
    auto shallow = [&](auto&& self, const Word& w, const PairSet& ps,
                       std::size_t depth) -> void {
      init.node(w, ps);
      if (depth == split) return;
      Word child = w;
      for (std::size_t s = 0; s < n_sym; ++s) {
        PairSet next = advance_pairs(cfg, ps, static_cast<int>(s));
        if (next.empty()) continue;
        child.push_back(cfg.m->input_alphabet[s]);
        self(self, child, next, depth + 1);
        child.pop_back();
      }
    };
    shallow(shallow, a, root, 0);

    auto seeds = internal::expand_layer(cfg, split);
    std::vector<Acc> partial(seeds.size(), blank);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(seeds.size());
         ++i) {
      Acc local(blank);
      Word child = seeds[i].first;
      for (std::size_t s = 0; s < n_sym; ++s) {
        PairSet next = advance_pairs(cfg, seeds[i].second,
                                     static_cast<int>(s));
        if (next.empty()) continue;
        child.push_back(cfg.m->input_alphabet[s]);
        walk(walk, child, next, local);
        child.pop_back();
      }
      partial[i] = std::move(local);
    }
    Acc out = std::move(init);
    for (auto& p : partial) out.merge(std::move(p));
    return out;
  }
#else
  (void)jobs;
#endif

  Word a;
  walk(walk, a, root, init);
  return init;
}

template <class W>
struct LayeredOutcome {
  bool exhausted = false;  // the live tree died out before max_depth
  bool over_budget = false;
  std::optional<W> witness;
  std::uint64_t nodes = 0;
};

// Iterative-deepening search. check(a, pairs) is called on every node of the
// current layer in lexicographic order (or a deterministic superset of the
// prefix-order-first nodes when parallel); the least layer node producing a
// witness wins. The budget counts visited nodes plus live pairs and is
// enforced between layers, with a hard stop at four times the budget.
template <class W, class Check>
LayeredOutcome<W> layered_search(const SweepConfig& cfg, std::size_t max_depth,
                                 std::uint64_t budget, int jobs,
                                 const Check& check) {
  LayeredOutcome<W> out;
  PairSet root = root_pairs(cfg);
  if (root.empty()) {
    out.exhausted = true;
    return out;
  }
  std::size_t n_sym = cfg.m->input_alphabet.size();
  std::uint64_t hard = budget > UINT64_MAX / 4 ? UINT64_MAX : budget * 4;

  for (std::size_t layer = 0; layer <= max_depth; ++layer) {
    std::uint64_t layer_nodes = 0;
    std::optional<W> best;
    bool aborted = false;

    // Serial walk: stops at the first witness in the layer.
    auto walk = [&](auto&& self, const Word& a, const PairSet& pairs) -> bool {
      out.nodes += 1 + pairs.size();
      if (out.nodes > hard) {
        aborted = true;
        return true;
      }
      if (a.size() == layer) {
        layer_nodes += 1;
        if (auto w = check(a, pairs)) {
          best = std::move(w);
          return true;
        }
        return false;
      }
      Word child = a;
      for (std::size_t s = 0; s < n_sym; ++s) {
        PairSet next = advance_pairs(cfg, pairs, static_cast<int>(s));
        if (next.empty()) continue;
        child.push_back(cfg.m->input_alphabet[s]);
        bool stop = self(self, child, next);
        child.pop_back();
        if (stop) return true;
      }
      return false;
    };

#ifdef _OPENMP
    if (jobs > 1 && layer > 2) {
      std::size_t split = internal::split_depth(layer, jobs);
      auto seeds = internal::expand_layer(cfg, split);
      std::uint64_t shallow_nodes = 0;
      {
        // Account nodes strictly above the split line once; split-line nodes
        // are counted by the subtree walks (or the seed loop below).
        Word a;
        auto count = [&](auto&& self, const Word& w, const PairSet& ps,
                         std::size_t depth) -> void {
          if (depth == split) return;
          shallow_nodes += 1 + ps.size();
          Word child = w;
          for (std::size_t s = 0; s < n_sym; ++s) {
            PairSet next = advance_pairs(cfg, ps, static_cast<int>(s));
            if (next.empty()) continue;
            child.push_back(cfg.m->input_alphabet[s]);
            self(self, child, next, depth + 1);
            child.pop_back();
          }
        };
        count(count, a, root, 0);
      }
      out.nodes += shallow_nodes;
      if (split == layer) {
        for (auto& seed : seeds) {
          out.nodes += 1 + seed.second.size();
          layer_nodes += 1;
          if (auto w = check(seed.first, seed.second)) {
            best = std::move(w);
            break;
          }
        }
      } else {
        std::vector<std::optional<W>> found(seeds.size());
        std::atomic<std::uint64_t> winner{UINT64_MAX};
        std::atomic<std::uint64_t> nodes{0};
        std::atomic<std::uint64_t> layer_count{0};
        std::atomic<bool> over{false};
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::ptrdiff_t i = 0;
             i < static_cast<std::ptrdiff_t>(seeds.size()); ++i) {
          if (static_cast<std::uint64_t>(i) > winner.load()) continue;
          std::uint64_t local_nodes = 0;
          std::uint64_t local_layer = 0;
          std::optional<W> local;
          auto sub = [&](auto&& self, const Word& a,
                         const PairSet& pairs) -> bool {
            local_nodes += 1 + pairs.size();
            if (out.nodes + nodes.load(std::memory_order_relaxed) +
                    local_nodes >
                hard) {
              over.store(true);
              return true;
            }
            if (a.size() == layer) {
              local_layer += 1;
              if (auto w = check(a, pairs)) {
                local = std::move(w);
                return true;
              }
              return false;
            }
            Word child = a;
            for (std::size_t s = 0; s < n_sym; ++s) {
              PairSet next = advance_pairs(cfg, pairs, static_cast<int>(s));
              if (next.empty()) continue;
              child.push_back(cfg.m->input_alphabet[s]);
              bool stop = self(self, child, next);
              child.pop_back();
              if (stop) return true;
            }
            return false;
          };
          sub(sub, seeds[i].first, seeds[i].second);
          nodes.fetch_add(local_nodes);
          layer_count.fetch_add(local_layer);
          if (local) {
            found[i] = std::move(local);
            std::uint64_t cur = winner.load();
            while (static_cast<std::uint64_t>(i) < cur &&
                   !winner.compare_exchange_weak(cur, i)) {
            }
          }
        }
        out.nodes += nodes.load();
        layer_nodes += layer_count.load();
        aborted = over.load();
        std::uint64_t w = winner.load();
        if (!aborted && w != UINT64_MAX) best = std::move(found[w]);
      }
    } else {
      Word a;
      walk(walk, a, root);
    }
#else
    {
      Word a;
      walk(walk, a, root);
    }
#endif

    if (aborted) {
      out.over_budget = true;
      return out;
    }
    if (best) {
      out.witness = std::move(best);
      return out;
    }
    if (layer_nodes == 0) {
      out.exhausted = true;
      return out;
    }
    if (out.nodes > budget) {
      out.over_budget = true;
      return out;
    }
  }
  return out;
}

}  // namespace xduce::detail
