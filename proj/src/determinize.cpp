#include "xduce/determinize.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "xduce/analysis.hpp"

namespace xduce {

DeterminizeContext::DeterminizeContext(const Nft& m, std::size_t bound)
    : m_(&m),
      bound_(bound),
      speed_(output_speed(m)),
      capacity_(speed_ + bound) {}

bool DeterminizeContext::viable(int state, Word suffix, bool exact) {
  auto key = std::make_tuple(state, std::move(suffix), exact);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  bool ok =
      accepting_continuation(*m_, state, std::get<1>(key), exact).has_value();
  cache_.emplace(std::move(key), ok);
  return ok;
}

NormalizeResult normalize(std::vector<TrackedPair> pairs, Word z) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::size_t produced = z.size();
  for (const TrackedPair& p : pairs) produced = std::min(produced, p.offset);
  if (produced > 0) {
    z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(produced));
    for (TrackedPair& p : pairs) p.offset -= produced;
  }
  return {MacroState{std::move(z), std::move(pairs)}, produced};
}

StepOutcome macro_step(DeterminizeContext& ctx, const MacroState& s,
                       int in_sym, int out_sym) {
  const Nft& m = ctx.machine();
  StepOutcome out;

  if (out_sym != kBlank && s.z.size() < ctx.capacity()) {
    // Buffer the next output symbol and keep the runs that can still produce
    // the extended buffer.
    out.m1 = Move::stay;
    out.m2 = Move::advance;
    Word z2 = s.z;
    z2.push_back(m.output_alphabet[out_sym]);
    std::vector<TrackedPair> kept;
    for (const TrackedPair& p : s.pairs) {
      Word suffix(z2.begin() + static_cast<std::ptrdiff_t>(p.offset),
                  z2.end());
      if (ctx.viable(p.state, std::move(suffix), false)) kept.push_back(p);
    }
    if (kept.empty()) return out;
    out.next = normalize(std::move(kept), std::move(z2)).state;
    return out;
  }

  if (in_sym != kBlank) {
    // Step every run through delta; produced output must agree with the
    // buffer and, once the output tape is exhausted, finish inside it.
    out.m1 = Move::advance;
    out.m2 = Move::stay;
    bool at_end = out_sym == kBlank;
    std::vector<TrackedPair> cand;
    for (const TrackedPair& p : s.pairs) {
      for (const Nft::Option& o : m.options(p.state, in_sym)) {
        std::size_t end = std::min(p.offset + o.out.size(), s.z.size());
        bool agrees = true;
        for (std::size_t k = p.offset; k < end; ++k)
          if (s.z[k] != o.out[k - p.offset]) {
            agrees = false;
            break;
          }
        if (!agrees) continue;
        if (p.offset + o.out.size() > s.z.size()) {
          if (!at_end) out.overflow_drops += 1;
          continue;
        }
        cand.push_back({o.target, p.offset + o.out.size()});
      }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<TrackedPair> kept;
    for (const TrackedPair& p : cand) {
      Word suffix(s.z.begin() + static_cast<std::ptrdiff_t>(p.offset),
                  s.z.end());
      if (ctx.viable(p.state, std::move(suffix), at_end)) kept.push_back(p);
    }
    if (kept.empty()) return out;
    out.next = normalize(std::move(kept), s.z).state;
    return out;
  }

  // Input exhausted, output remaining, buffer full: no run can cover the
  // rest of the output tape.
  out.m1 = Move::stay;
  out.m2 = Move::advance;
  return out;
}

DeterminizeResult determinize(const Nft& m, std::size_t bound,
                              std::size_t state_budget) {
  validate(m);
  DeterminizeContext ctx(m, bound);
  DeterminizeResult res;
  res.speed = ctx.speed();
  res.buffer_capacity = ctx.capacity();

  Tdfa a;
  a.input_alphabet = m.input_alphabet;
  a.output_alphabet = m.output_alphabet;

  std::map<MacroState, int> ids;
  std::map<int, MacroState> by_id;
  std::vector<std::string> names;
  int sink = -1;
  std::size_t next_macro_name = 0;

  auto add_state = [&](const std::string& name) {
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
  };
  auto ensure_sink = [&]() {
    if (sink < 0) sink = add_state("sink");
    return sink;
  };
  auto intern = [&](MacroState ms) {
    auto it = ids.find(ms);
    if (it != ids.end()) return it->second;
    if (ids.size() >= state_budget) throw budget_error(ids.size() + 1);
    int id = add_state("m" + std::to_string(next_macro_name++));
    ids.emplace(std::move(ms), id);
    return id;
  };

  std::deque<int> queue;
  int initial;
  if (ctx.viable(m.initial, {}, false)) {
    MacroState start{{}, {TrackedPair{m.initial, 0}}};
    initial = intern(start);
    by_id.emplace(initial, start);
    queue.push_back(initial);
  } else {
    initial = ensure_sink();
  }

  struct PendingArc {
    int from, in_sym, out_sym, to;
    Move m1, m2;
  };
  std::vector<PendingArc> arcs;
  int n_in = static_cast<int>(m.input_alphabet.size());
  int n_out = static_cast<int>(m.output_alphabet.size());

  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    MacroState cur = by_id.at(id);
    for (int i = 0; i <= n_in; ++i) {
      int in_sym = i < n_in ? i : kBlank;
      for (int j = 0; j <= n_out; ++j) {
        int out_sym = j < n_out ? j : kBlank;
        if (in_sym == kBlank && out_sym == kBlank) continue;
        StepOutcome step = macro_step(ctx, cur, in_sym, out_sym);
        res.overflow_drops += step.overflow_drops;
        int to;
        if (step.next) {
          bool fresh = ids.find(*step.next) == ids.end();
          to = intern(*step.next);
          if (fresh) {
            by_id.emplace(to, *step.next);
            queue.push_back(to);
          }
        } else {
          to = ensure_sink();
        }
        arcs.push_back({id, in_sym, out_sym, to, step.m1, step.m2});
      }
    }
  }

  a.states = names;
  a.initial = initial;
  a.accepting.assign(names.size(), 0);
  res.macro.assign(names.size(), std::nullopt);
  for (const auto& [ms, id] : ids) {
    res.macro[id] = ms;
    for (const TrackedPair& p : ms.pairs)
      if (p.offset == ms.z.size() && m.accepting[p.state])
        a.accepting[id] = 1;
  }
  res.sink = sink;

  a.arcs.assign(names.size() * (n_in + 1) * (n_out + 1), std::nullopt);
  for (const PendingArc& p : arcs)
    a.set_arc(p.from, p.in_sym, p.out_sym, Tdfa::Arc{p.to, p.m1, p.m2});
  if (sink >= 0) {
    for (int i = 0; i <= n_in; ++i) {
      int in_sym = i < n_in ? i : kBlank;
      for (int j = 0; j <= n_out; ++j) {
        int out_sym = j < n_out ? j : kBlank;
        if (in_sym == kBlank && out_sym == kBlank) continue;
        Move m1 = in_sym != kBlank ? Move::advance : Move::stay;
        Move m2 = in_sym != kBlank ? Move::stay : Move::advance;
        a.set_arc(sink, in_sym, out_sym, Tdfa::Arc{sink, m1, m2});
      }
    }
  }

  validate(a);
  res.automaton = std::move(a);
  return res;
}

std::string render_macro(const Nft& m, const MacroState& s) {
  std::ostringstream out;
  out << "z=" << render_word(s.z, m.output_alphabet) << " P={";
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    if (i) out << ",";
    out << "(" << m.states[s.pairs[i].state] << "," << s.pairs[i].offset
        << ")";
  }
  out << "}";
  return out.str();
}

std::string render_annotations(const Nft& m, const DeterminizeResult& r) {
  std::ostringstream out;
  out << "s=" << r.speed << "\n";
  out << "r=" << r.buffer_capacity << "\n";
  out << "overflow_drops=" << r.overflow_drops << "\n";
  for (std::size_t i = 0; i < r.automaton.states.size(); ++i) {
    out << "state " << r.automaton.states[i] << " ";
    if (r.macro[i])
      out << render_macro(m, *r.macro[i]);
    else
      out << "sink";
    out << "\n";
  }
  return out.str();
}

Annotations parse_annotations(const std::string& text) {
  Annotations ann;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no += 1;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head.rfind("s=", 0) == 0) {
      ann.speed = std::stoull(head.substr(2));
    } else if (head.rfind("r=", 0) == 0) {
      ann.capacity = std::stoull(head.substr(2));
    } else if (head.rfind("overflow_drops=", 0) == 0) {
      ann.overflow_drops = std::stoull(head.substr(15));
    } else if (head == "state") {
      std::string name;
      if (!(ls >> name)) throw parse_error(line_no, "state line needs a name");
      std::string rest;
      std::getline(ls, rest);
      std::size_t at = rest.find_first_not_of(' ');
      ann.display[name] = at == std::string::npos ? "" : rest.substr(at);
    } else {
      throw parse_error(line_no, "unrecognized annotation line");
    }
  }
  return ann;
}

std::string macro_trace(const Tdfa& a, const Annotations& ann,
                        const TdfaTrace& trace) {
  std::ostringstream out;
  out << "s=" << ann.speed << " r=" << ann.capacity << "\n";
  auto show = [&](int state) {
    const std::string& name = a.states[state];
    auto it = ann.display.find(name);
    out << (it != ann.display.end() ? it->second : name) << "\n";
  };
  int first = trace.steps.empty() ? trace.final_state : trace.steps[0].state;
  show(first);
  std::size_t k = trace.steps.size();
  for (std::size_t j = 0; j < k; ++j) {
    int after = j + 1 < k ? trace.steps[j + 1].state : trace.final_state;
    bool input_step = trace.steps[j].m1 == Move::advance;
    bool next_input =
        j + 1 < k ? trace.steps[j + 1].m1 == Move::advance : true;
    if (input_step || next_input) show(after);
  }
  if (trace.missing_entry) out << "missing entry\n";
  out << "result: " << (trace.accepted ? "accept" : "reject") << "\n";
  return out.str();
}

}  // namespace xduce
