#include "xduce/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace xduce {

// ---------------------------------------------------------------------------
// Membership by (state, matched length) reachability

bool nft_membership(const Nft& m, const Word& a, const Word& u) {
  std::size_t nu = u.size();
  auto matches_at = [&](const Word& w, std::size_t n) {
    if (n + w.size() > nu) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!(u[n + i] == w[i])) return false;
    return true;
  };
  std::vector<std::vector<char>> reach(m.states.size(),
                                       std::vector<char>(nu + 1, 0));
  reach[m.initial][0] = 1;
  for (const Symbol& s : a) {
    int sym = m.input_index(s);
    if (sym < 0) return false;
    std::vector<std::vector<char>> next(m.states.size(),
                                        std::vector<char>(nu + 1, 0));
    bool any = false;
    for (std::size_t q = 0; q < m.states.size(); ++q)
      for (std::size_t n = 0; n <= nu; ++n) {
        if (!reach[q][n]) continue;
        for (const auto& o : m.delta[q][sym])
          if (matches_at(o.out, n)) {
            next[o.target][n + o.out.size()] = 1;
            any = true;
          }
      }
    if (!any) return false;
    reach = std::move(next);
  }
  for (std::size_t q = 0; q < m.states.size(); ++q)
    if (m.accepting[q] && reach[q][nu]) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Run tree enumeration

namespace {

struct RankedLess {
  const Nft& m;
  int rank(const Symbol& s) const { return m.output_index(s); }
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      int ra = rank(a[i]), rb = rank(b[i]);
      if (ra != rb) return ra < rb;
    }
    return false;
  }
};

// Depth-first walk over all runs on `a`, invoking visit(state, output) at the
// end of each complete run. Returns false when the visitor stops the walk.
template <typename Visit>
bool walk_runs(const Nft& m, const Word& a, std::size_t pos, int state,
               Word& out, Visit&& visit) {
  if (pos == a.size()) return visit(state, out);
  int sym = m.input_index(a[pos]);
  if (sym < 0) return true;
  for (const auto& o : m.delta[state][sym]) {
    std::size_t mark = out.size();
    out.insert(out.end(), o.out.begin(), o.out.end());
    bool go = walk_runs(m, a, pos + 1, o.target, out, visit);
    out.resize(mark);
    if (!go) return false;
  }
  return true;
}

}  // namespace

OutputSet nft_outputs(const Nft& m, const Word& a, std::uint64_t cap) {
  std::set<Word> seen;
  OutputSet result;
  Word out;
  walk_runs(m, a, 0, m.initial, out, [&](int q, const Word& o) {
    if (!m.accepting[q]) return true;
    if (seen.count(o)) return true;
    if (seen.size() >= cap) {
      result.truncated = true;
      return false;
    }
    seen.insert(o);
    return true;
  });
  result.words.assign(seen.begin(), seen.end());
  std::sort(result.words.begin(), result.words.end(), RankedLess{m});
  return result;
}

RunCount nft_accepting_run_count(const Nft& m, const Word& a, const Word& u,
                                 std::uint64_t cap) {
  RunCount r;
  Word out;
  walk_runs(m, a, 0, m.initial, out, [&](int q, const Word& o) {
    if (m.accepting[q] && o == u) {
      if (r.count == cap) {
        r.truncated = true;
        return false;
      }
      ++r.count;
    }
    return true;
  });
  return r;
}

bool nft_run_exists(const Nft& m, int from, const Word& input,
                    const Word& output, int to) {
  std::size_t nu = output.size();
  std::vector<std::vector<char>> reach(m.states.size(),
                                       std::vector<char>(nu + 1, 0));
  reach[from][0] = 1;
  for (const Symbol& s : input) {
    int sym = m.input_index(s);
    if (sym < 0) return false;
    std::vector<std::vector<char>> next(m.states.size(),
                                        std::vector<char>(nu + 1, 0));
    for (std::size_t q = 0; q < m.states.size(); ++q)
      for (std::size_t n = 0; n <= nu; ++n) {
        if (!reach[q][n]) continue;
        for (const auto& o : m.delta[q][sym]) {
          std::size_t end = n + o.out.size();
          if (end > nu) continue;
          if (!std::equal(o.out.begin(), o.out.end(), output.begin() + n))
            continue;
          next[o.target][end] = 1;
        }
      }
    reach = std::move(next);
  }
  return reach[to][nu];
}

// ---------------------------------------------------------------------------
// Two-tape automaton execution

TdfaTrace tdfa_run(const Tdfa& m, const Word& a, const Word& u) {
  TdfaTrace t;
  int q = m.initial;
  std::size_t i = 0, j = 0;
  for (;;) {
    int in_sym = i < a.size() ? m.input_index(a[i]) : kBlank;
    int out_sym = j < u.size() ? m.output_index(u[j]) : kBlank;
    // an undeclared symbol on either tape behaves like a missing entry
    if ((i < a.size() && in_sym == kBlank) ||
        (j < u.size() && out_sym == kBlank)) {
      t.missing_entry = true;
      break;
    }
    if (in_sym == kBlank && out_sym == kBlank) break;  // both tapes done
    const auto& arc = m.arc(q, in_sym, out_sym);
    if (!arc) {
      t.missing_entry = true;
      break;
    }
    t.steps.push_back({q, i, j, in_sym, out_sym, arc->m1, arc->m2});
    if (arc->m1 == Move::advance) ++i;
    if (arc->m2 == Move::advance) ++j;
    q = arc->target;
  }
  t.final_state = q;
  t.final_in_pos = i;
  t.final_out_pos = j;
  t.accepted = !t.missing_entry && i == a.size() && j == u.size() &&
               m.accepting[q];
  return t;
}

std::string render_trace(const Tdfa& m, const TdfaTrace& t) {
  std::ostringstream out;
  auto sym = [](const std::vector<Symbol>& alpha, int s) {
    return s == kBlank ? std::string(".") : alpha[s].text;
  };
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    out << "step " << k << ": state=" << m.states[s.state] << " in=" << s.in_pos
        << " out=" << s.out_pos << " read=("
        << sym(m.input_alphabet, s.read_in) << ','
        << sym(m.output_alphabet, s.read_out) << ") move=("
        << (s.m1 == Move::advance ? 'A' : 'S') << ','
        << (s.m2 == Move::advance ? 'A' : 'S') << ")\n";
  }
  if (t.missing_entry)
    out << "sink: no transition from state=" << m.states[t.final_state]
        << " at in=" << t.final_in_pos << " out=" << t.final_out_pos << "\n";
  out << "result: " << (t.accepted ? "accept" : "reject")
      << " state=" << m.states[t.final_state] << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Turing machine execution

std::size_t Configuration::head_index() const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].head) return i;
  return cells.size();
}

Configuration tm_initial_configuration(const TuringMachine& m) {
  Configuration c;
  c.cells.push_back({true, m.initial, kBlank});
  return c;
}

bool tm_halting(const TuringMachine& m, const Configuration& c) {
  std::size_t h = c.head_index();
  const Cell& cell = c.cells[h];
  if (m.accepting[cell.state]) return true;
  return !m.rule(cell.state, cell.symbol).has_value();
}

std::optional<Configuration> tm_step(const TuringMachine& m,
                                     const Configuration& c) {
  if (tm_halting(m, c)) return std::nullopt;
  std::size_t h = c.head_index();
  const auto& r = *m.rule(c.cells[h].state, c.cells[h].symbol);
  Configuration next = c;
  next.cells[h] = {false, 0, r.write};
  if (r.move == TmMove::right) {
    if (h + 1 == next.cells.size())
      next.cells.push_back({true, r.target, kBlank});
    else {
      next.cells[h + 1].head = true;
      next.cells[h + 1].state = r.target;
    }
  } else {
    if (h == 0)
      next.cells.insert(next.cells.begin(), {true, r.target, kBlank});
    else {
      next.cells[h - 1].head = true;
      next.cells[h - 1].state = r.target;
    }
  }
  return next;
}

TmRun tm_run(const TuringMachine& m, std::size_t max_steps) {
  TmRun run;
  run.configs.push_back(tm_initial_configuration(m));
  std::set<Configuration> seen{run.configs.back()};
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto next = tm_step(m, run.configs.back());
    if (!next) {
      run.status = TmStatus::halted;
      return run;
    }
    if (seen.count(*next)) {
      run.status = TmStatus::looping;
      return run;
    }
    seen.insert(*next);
    run.configs.push_back(std::move(*next));
  }
  run.status = tm_halting(m, run.configs.back()) ? TmStatus::halted
                                                 : TmStatus::step_limit;
  return run;
}

std::string render_configuration(const TuringMachine& m,
                                 const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (i) out += ' ';
    const Cell& cell = c.cells[i];
    if (cell.head) {
      out += m.states[cell.state];
      out += '@';
      out += cell.symbol == kBlank ? "." : m.alphabet[cell.symbol].text;
    } else {
      out += m.alphabet[cell.symbol].text;
    }
  }
  return out;
}

}  // namespace xduce
