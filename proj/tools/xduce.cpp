// Command line front end. Exit codes: 0 on a positive verdict or plain
// success, 1 on a negative verdict (reject, not equivalent, witness found),
// 2 on usage or parse errors, 3 when a resource budget runs out.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xduce/analysis.hpp"
#include "xduce/determinize.hpp"
#include "xduce/harness.hpp"
#include "xduce/machines.hpp"
#include "xduce/reduction.hpp"
#include "xduce/semantics.hpp"
#include "xduce/words.hpp"

using nlohmann::json;
using namespace xduce;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

const Nft& as_nft(const Machine& m, const std::string& path) {
  if (auto* t = std::get_if<Nft>(&m)) return *t;
  throw validation_error(path + ": expected a transducer");
}

const Tdfa& as_tdfa(const Machine& m, const std::string& path) {
  if (auto* t = std::get_if<Tdfa>(&m)) return *t;
  throw validation_error(path + ": expected a two-tape automaton");
}

const TuringMachine& as_tm(const Machine& m, const std::string& path) {
  if (auto* t = std::get_if<TuringMachine>(&m)) return *t;
  throw validation_error(path + ": expected a Turing machine");
}

std::string wtext(const Word& w, const std::vector<Symbol>& alphabet) {
  return render_word(w, alphabet);
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json trailing_json(const Nft& m, const TrailingWitness& w) {
  return json{{"a", wtext(w.a, m.input_alphabet)},
              {"u", wtext(w.u, m.output_alphabet)},
              {"v", wtext(w.v, m.output_alphabet)},
              {"q1", m.states[w.q1]},
              {"q2", m.states[w.q2]},
              {"b1", wtext(w.b1, m.input_alphabet)},
              {"w1", wtext(w.w1, m.output_alphabet)},
              {"b2", wtext(w.b2, m.input_alphabet)},
              {"w2", wtext(w.w2, m.output_alphabet)},
              {"f1", m.states[w.f1]},
              {"f2", m.states[w.f2]}};
}

json variation_json(const Nft& m, const VariationWitness& w) {
  return json{{"a", wtext(w.a, m.input_alphabet)},
              {"o1", wtext(w.o1, m.output_alphabet)},
              {"o2", wtext(w.o2, m.output_alphabet)},
              {"q1", m.states[w.q1]},
              {"q2", m.states[w.q2]},
              {"d", w.d}};
}

// Shared option bag; each subcommand binds the flags it needs.
struct Opts {
  std::string machine, machine2, input, output_word, out_path;
  std::size_t bound = 0, max_input = 0, max_output = 0, k = 0;
  std::size_t state_budget = 100000, steps = 0, n_states = 2, n_symbols = 2;
  std::size_t max_out = 2;
  std::uint64_t cap = 1000, budget = 50'000'000, seed = 0;
  double density = 0.5;
  int jobs = 1;
  bool json_out = false, trace = false;
  std::string mode;
};

int run_analyze(const Opts& o) {
  Machine m = load_machine(o.machine);
  json j;
  std::ostringstream text;
  if (auto* t = std::get_if<Nft>(&m)) {
    auto co = co_reachable(*t);
    std::vector<std::string> names;
    for (int q : co) names.push_back(t->states[q]);
    j = json{{"verdict", "ok"},
             {"kind", "nft"},
             {"states", t->states.size()},
             {"options", t->entry_count()},
             {"output_speed", output_speed(*t)},
             {"shortcut_guarantee", shortcut_guarantee(*t)},
             {"co_reachable", names}};
    text << "kind: transducer\nstates: " << t->states.size()
         << "\noptions: " << t->entry_count()
         << "\noutput speed: " << output_speed(*t)
         << "\nshortcut guarantee: " << shortcut_guarantee(*t)
         << "\nco-reachable:";
    for (const auto& n : names) text << ' ' << n;
    text << "\n";
  } else if (auto* a = std::get_if<Tdfa>(&m)) {
    j = json{{"verdict", "ok"},
             {"kind", "tdfa"},
             {"states", a->states.size()},
             {"arcs", a->entry_count()}};
    text << "kind: two-tape automaton\nstates: " << a->states.size()
         << "\narcs: " << a->entry_count() << "\n";
  } else {
    auto* tm = std::get_if<TuringMachine>(&m);
    auto rules = std::count_if(tm->rules.begin(), tm->rules.end(),
                               [](const auto& r) { return r.has_value(); });
    j = json{{"verdict", "ok"},
             {"kind", "tm"},
             {"states", tm->states.size()},
             {"rules", rules}};
    text << "kind: turing machine\nstates: " << tm->states.size()
         << "\nrules: " << rules << "\n";
  }
  emit(o.json_out, j, text.str());
  return 0;
}

int run_member(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  bool ok = nft_membership(t, parse_word(o.input), parse_word(o.output_word));
  emit(o.json_out, json{{"verdict", ok ? "accept" : "reject"}},
       ok ? "accept\n" : "reject\n");
  return ok ? 0 : 1;
}

int run_outputs(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  OutputSet s = nft_outputs(t, parse_word(o.input), o.cap);
  json words = json::array();
  std::ostringstream text;
  for (const auto& w : s.words) {
    words.push_back(wtext(w, t.output_alphabet));
    text << wtext(w, t.output_alphabet) << "\n";
  }
  if (s.truncated) text << "(truncated at " << o.cap << ")\n";
  emit(o.json_out,
       json{{"verdict", "ok"}, {"outputs", words}, {"truncated", s.truncated}},
       text.str());
  return 0;
}

int run_run_tdfa(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Tdfa& a = as_tdfa(m, o.machine);
  TdfaTrace t = tdfa_run(a, parse_word(o.input), parse_word(o.output_word));
  std::ostringstream text;
  if (o.trace) {
    std::string ann_path = o.machine + ".ann";
    if (std::filesystem::exists(ann_path))
      text << macro_trace(a, parse_annotations(read_file(ann_path)), t);
    else
      text << render_trace(a, t);
  } else {
    text << (t.accepted ? "accept" : "reject") << "\n";
  }
  emit(o.json_out,
       json{{"verdict", t.accepted ? "accept" : "reject"},
            {"steps", t.steps.size()},
            {"final_state", a.states[t.final_state]}},
       text.str());
  return t.accepted ? 0 : 1;
}

int run_determinize(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  DeterminizeResult r = determinize(t, o.bound, o.state_budget);
  std::string body = serialize(r.automaton);
  std::string ann = render_annotations(t, r);
  json j{{"verdict", "ok"},
         {"states", r.automaton.states.size()},
         {"speed", r.speed},
         {"capacity", r.buffer_capacity},
         {"overflow_drops", r.overflow_drops}};
  std::ostringstream text;
  if (o.out_path.empty()) {
    text << body;
    j["tdfa"] = body;
    j["annotations"] = ann;
  } else {
    write_file(o.out_path, body);
    write_file(o.out_path + ".ann", ann);
    j["output"] = o.out_path;
    text << "states: " << r.automaton.states.size() << "\nspeed: " << r.speed
         << "\ncapacity: " << r.buffer_capacity
         << "\noverflow drops: " << r.overflow_drops << "\nwrote: "
         << o.out_path << ", " << o.out_path << ".ann\n";
  }
  emit(o.json_out, j, text.str());
  return 0;
}

int run_check_equiv(const Opts& o) {
  Machine m1 = load_machine(o.machine);
  Machine m2 = load_machine(o.machine2);
  Domain d{o.max_input, o.max_output};
  auto cx = check_equivalence(m1, m2, d, o.jobs);
  if (!cx) {
    emit(o.json_out, json{{"verdict", "equivalent"}}, "equivalent\n");
    return 0;
  }
  const std::vector<Symbol>* in_alpha = nullptr;
  const std::vector<Symbol>* out_alpha = nullptr;
  if (auto* t = std::get_if<Nft>(&m1)) {
    in_alpha = &t->input_alphabet;
    out_alpha = &t->output_alphabet;
  } else {
    auto* a = std::get_if<Tdfa>(&m1);
    in_alpha = &a->input_alphabet;
    out_alpha = &a->output_alphabet;
  }
  json j{{"verdict", "different"},
         {"a", wtext(cx->a, *in_alpha)},
         {"u", wtext(cx->u, *out_alpha)},
         {"first", cx->v1},
         {"second", cx->v2}};
  std::ostringstream text;
  text << "different\na = " << wtext(cx->a, *in_alpha)
       << "\nu = " << wtext(cx->u, *out_alpha) << "\nfirst "
       << (cx->v1 ? "accepts" : "rejects") << ", second "
       << (cx->v2 ? "accepts" : "rejects") << "\n";
  emit(o.json_out, j, text.str());
  return 1;
}

template <class W>
int finish_search(const Opts& o, const Nft& t, const SearchResult<W>& r,
                  json (*to_json)(const Nft&, const W&)) {
  json j{{"nodes", r.nodes}};
  std::ostringstream text;
  switch (r.status) {
    case SearchStatus::found:
      j["verdict"] = "found";
      j["witness"] = to_json(t, *r.witness);
      text << "WITNESS FOUND\n" << render_witness(t, *r.witness);
      emit(o.json_out, j, text.str());
      return 1;
    case SearchStatus::absent:
      j["verdict"] = "absent";
      text << "no witness up to max input " << o.max_input << "\n";
      emit(o.json_out, j, text.str());
      return 0;
    case SearchStatus::budget_exceeded:
      j["verdict"] = "budget_exceeded";
      text << "node budget exceeded after " << r.nodes << " nodes\n";
      emit(o.json_out, j, text.str());
      return 3;
  }
  return 2;
}

int run_find_trailing(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  SearchLimits lim{o.max_input, o.budget, o.jobs};
  return finish_search(o, t, find_trailing_witness(t, o.bound, lim),
                       &trailing_json);
}

int run_find_variation(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  SearchLimits lim{o.max_input, o.budget, o.jobs};
  return finish_search(o, t, find_variation_witness(t, o.bound, lim),
                       &variation_json);
}

int run_valuedness(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  ValuednessResult r = max_valuedness(t, o.max_input, o.cap, o.jobs);
  json j{{"verdict", "ok"}, {"k", r.k}, {"truncated", r.truncated}};
  std::ostringstream text;
  text << "max valuedness: " << r.k;
  if (r.truncated) text << " (cap reached)";
  text << "\n";
  if (r.witness_input) {
    j["witness_input"] = wtext(*r.witness_input, t.input_alphabet);
    text << "witness input: " << wtext(*r.witness_input, t.input_alphabet)
         << "\n";
  } else {
    j["witness_input"] = nullptr;
  }
  emit(o.json_out, j, text.str());
  return 0;
}

int run_ambiguity(const Opts& o) {
  Machine m = load_machine(o.machine);
  const Nft& t = as_nft(m, o.machine);
  std::uint64_t k = max_ambiguity(t, o.max_input, o.max_output, o.cap, o.jobs);
  json j{{"verdict", "ok"}, {"count", k}, {"saturated", k >= o.cap}};
  std::ostringstream text;
  text << "max ambiguity: " << k;
  if (k >= o.cap) text << " (cap reached)";
  text << "\n";
  emit(o.json_out, j, text.str());
  return 0;
}

int run_tm_run(const Opts& o) {
  Machine m = load_machine(o.machine);
  const TuringMachine& t = as_tm(m, o.machine);
  TmRun r = tm_run(t, o.steps);
  const char* status = r.status == TmStatus::halted     ? "halted"
                       : r.status == TmStatus::looping ? "looping"
                                                        : "step_limit";
  json configs = json::array();
  std::ostringstream text;
  for (const auto& c : r.configs) {
    configs.push_back(render_configuration(t, c));
    text << render_configuration(t, c) << "\n";
  }
  text << status << " after " << (r.configs.size() - 1) << " steps\n";
  emit(o.json_out,
       json{{"verdict", status},
            {"steps", r.configs.size() - 1},
            {"configs", configs}},
       text.str());
  return 0;
}

int run_tm_to_nft(const Opts& o) {
  Machine m = load_machine(o.machine);
  const TuringMachine& t = as_tm(m, o.machine);
  ReductionNft r = tm_to_nft(t);
  std::string body = serialize_with_legend(r);
  json j{{"verdict", "ok"},
         {"states", r.nft.states.size()},
         {"tokens", r.nft.input_alphabet.size()},
         {"options", r.nft.entry_count()}};
  std::ostringstream text;
  if (o.out_path.empty()) {
    text << body;
    j["nft"] = body;
  } else {
    write_file(o.out_path, body);
    j["output"] = o.out_path;
    text << "states: " << r.nft.states.size()
         << "\ntokens: " << r.nft.input_alphabet.size()
         << "\noptions: " << r.nft.entry_count() << "\nwrote: " << o.out_path
         << "\n";
  }
  emit(o.json_out, j, text.str());
  return 0;
}

int run_gen_input(const Opts& o) {
  Machine m = load_machine(o.machine);
  const TuringMachine& t = as_tm(m, o.machine);
  ReductionMode mode =
      o.mode == "copy" ? ReductionMode::copy : ReductionMode::step;
  ReductionNft r = tm_to_nft(t);
  Word in = build_reduction_input(t, o.k, mode);
  Word out = expected_reduction_output(t, o.k, mode);
  json j{{"verdict", "ok"},
         {"input", wtext(in, r.nft.input_alphabet)},
         {"expected_output", wtext(out, r.nft.output_alphabet)}};
  std::ostringstream text;
  text << "input: " << wtext(in, r.nft.input_alphabet)
       << "\nexpected output: " << wtext(out, r.nft.output_alphabet) << "\n";
  emit(o.json_out, j, text.str());
  return 0;
}

int run_random_nft(const Opts& o) {
  Nft t = random_nft(o.seed, o.n_states, o.n_symbols, o.max_out, o.density);
  std::string body = serialize(t);
  json j{{"verdict", "ok"},
         {"states", t.states.size()},
         {"options", t.entry_count()}};
  std::ostringstream text;
  if (o.out_path.empty()) {
    text << body;
    j["nft"] = body;
  } else {
    write_file(o.out_path, body);
    j["output"] = o.out_path;
    text << "states: " << t.states.size()
         << "\noptions: " << t.entry_count() << "\nwrote: " << o.out_path
         << "\n";
  }
  emit(o.json_out, j, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transducer and two-tape automaton toolkit"};
  app.require_subcommand(1);
  Opts o;
  int rc = 0;
  std::function<int()> runner;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json_out); };
  auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "worker threads")
        ->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "structural facts");
  analyze->add_option("machine", o.machine)->required();
  add_json(analyze);
  analyze->callback([&] { runner = [&] { return run_analyze(o); }; });

  auto* member = app.add_subcommand("member", "does the transducer accept (a, u)?");
  member->add_option("machine", o.machine)->required();
  member->add_option("input", o.input)->required();
  member->add_option("output", o.output_word)->required();
  add_json(member);
  member->callback([&] { runner = [&] { return run_member(o); }; });

  auto* outputs = app.add_subcommand("outputs", "outputs for one input");
  outputs->add_option("machine", o.machine)->required();
  outputs->add_option("input", o.input)->required();
  outputs->add_option("--cap", o.cap, "stop after this many words");
  add_json(outputs);
  outputs->callback([&] { runner = [&] { return run_outputs(o); }; });

  auto* run_tdfa_cmd = app.add_subcommand("run-tdfa", "run on two tapes");
  run_tdfa_cmd->add_option("machine", o.machine)->required();
  run_tdfa_cmd->add_option("input", o.input)->required();
  run_tdfa_cmd->add_option("output", o.output_word)->required();
  run_tdfa_cmd->add_flag("--trace", o.trace,
                         "print the step trace; with a sibling .ann file, "
                         "print annotated macro states instead");
  add_json(run_tdfa_cmd);
  run_tdfa_cmd->callback([&] { runner = [&] { return run_run_tdfa(o); }; });

  auto* det = app.add_subcommand("determinize",
                                 "compile a transducer with a trailing bound "
                                 "into a two-tape automaton");
  det->add_option("machine", o.machine)->required();
  det->add_option("--trailing-bound", o.bound)->required();
  det->add_option("--state-budget", o.state_budget);
  det->add_option("-o,--output", o.out_path, "also writes <output>.ann");
  add_json(det);
  det->callback([&] { runner = [&] { return run_determinize(o); }; });

  auto* equiv = app.add_subcommand("check-equiv", "compare two machines on a bounded domain");
  equiv->add_option("machine1", o.machine)->required();
  equiv->add_option("machine2", o.machine2)->required();
  equiv->add_option("--max-input", o.max_input)->required();
  equiv->add_option("--max-output", o.max_output)->required();
  add_jobs(equiv);
  add_json(equiv);
  equiv->callback([&] { runner = [&] { return run_check_equiv(o); }; });

  auto* ft = app.add_subcommand("find-trailing", "search for a trailing-bound violation");
  ft->add_option("machine", o.machine)->required();
  ft->add_option("--bound", o.bound)->required();
  ft->add_option("--max-input", o.max_input)->required();
  ft->add_option("--budget", o.budget, "node budget");
  add_jobs(ft);
  add_json(ft);
  ft->callback([&] { runner = [&] { return run_find_trailing(o); }; });

  auto* fv = app.add_subcommand("find-variation", "search for outputs further apart than the bound");
  fv->add_option("machine", o.machine)->required();
  fv->add_option("--bound", o.bound)->required();
  fv->add_option("--max-input", o.max_input)->required();
  fv->add_option("--budget", o.budget, "node budget");
  add_jobs(fv);
  add_json(fv);
  fv->callback([&] { runner = [&] { return run_find_variation(o); }; });

  auto* val = app.add_subcommand("valuedness", "max distinct outputs over bounded inputs");
  val->add_option("machine", o.machine)->required();
  val->add_option("--max-input", o.max_input)->required();
  val->add_option("--cap", o.cap, "count at most this many outputs per input");
  add_jobs(val);
  add_json(val);
  val->callback([&] { runner = [&] { return run_valuedness(o); }; });

  auto* amb = app.add_subcommand("ambiguity", "max accepting runs per bounded pair");
  amb->add_option("machine", o.machine)->required();
  amb->add_option("--max-input", o.max_input)->required();
  amb->add_option("--max-output", o.max_output)->required();
  amb->add_option("--cap", o.cap, "saturate the count here");
  add_jobs(amb);
  add_json(amb);
  amb->callback([&] { runner = [&] { return run_ambiguity(o); }; });

  auto* tmr = app.add_subcommand("tm-run", "run a Turing machine from the empty tape");
  tmr->add_option("machine", o.machine)->required();
  tmr->add_option("--steps", o.steps)->required();
  add_json(tmr);
  tmr->callback([&] { runner = [&] { return run_tm_run(o); }; });

  auto* t2n = app.add_subcommand("tm-to-nft", "compile a Turing machine into a transducer over configuration streams");
  t2n->add_option("machine", o.machine)->required();
  t2n->add_option("-o,--output", o.out_path);
  add_json(t2n);
  t2n->callback([&] { runner = [&] { return run_tm_to_nft(o); }; });

  auto* gen = app.add_subcommand("gen-input", "configuration stream for the machine's own run");
  gen->add_option("machine", o.machine)->required();
  gen->add_option("--k", o.k, "configurations before the mode token")
      ->required();
  gen->add_option("--mode", o.mode)->required()->check(
      CLI::IsMember({"copy", "step"}));
  add_json(gen);
  gen->callback([&] { runner = [&] { return run_gen_input(o); }; });

  auto* rnd = app.add_subcommand("random-nft", "seeded random transducer");
  rnd->add_option("--seed", o.seed)->required();
  rnd->add_option("--states", o.n_states);
  rnd->add_option("--symbols", o.n_symbols);
  rnd->add_option("--max-out", o.max_out, "max output length per option");
  rnd->add_option("--density", o.density)->check(CLI::Range(0.0, 1.0));
  rnd->add_option("-o,--output", o.out_path);
  add_json(rnd);
  rnd->callback([&] { runner = [&] { return run_random_nft(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    rc = runner();
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
