// Compares the serial sweeps against the threaded ones on workloads big
// enough to matter. Not part of the test suite; results depend on the host.
// Usage: xduce_bench [corpus-dir]

#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <thread>

#include "xduce/analysis.hpp"
#include "xduce/harness.hpp"
#include "xduce/machines.hpp"
#include "xduce/reduction.hpp"

using namespace xduce;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
  auto t0 = clk::now();
  f();
  return seconds(t0, clk::now());
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s %9.3fs %9.3fs %6.2fx %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::string corpus = argc > 1 ? argv[1] : "corpus";
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 2) jobs = 2;
  if (jobs > 8) jobs = 8;

  Machine walker_m = load_machine(corpus + "/walker.tm");
  const auto& walker = std::get<TuringMachine>(walker_m);
  Nft reduction = tm_to_nft(walker).nft;
  Machine exbt_m = load_machine(corpus + "/exbt.nft");
  const auto& exbt = std::get<Nft>(exbt_m);
  Machine constr_m = load_machine(corpus + "/constr.nft");
  const auto& constr = std::get<Nft>(constr_m);

  std::printf("threads: %d\n", jobs);
  std::printf("%-34s %10s %10s %7s\n", "workload", "serial", "threads",
              "speedup");

  {
    SearchLimits serial_lim{14, 400'000'000, 1};
    SearchLimits par_lim{14, 400'000'000, jobs};
    SearchResult<TrailingWitness> a, b;
    double ts = timed([&] { a = find_trailing_witness(reduction, 5, serial_lim); });
    double tp = timed([&] { b = find_trailing_witness(reduction, 5, par_lim); });
    bool same = a.status == b.status &&
                (!a.witness || (a.witness->a == b.witness->a &&
                                a.witness->v == b.witness->v));
    row("find-trailing walker b=5 n=14", ts, tp, same);
  }
  {
    ValuednessResult a, b;
    double ts = timed([&] { a = max_valuedness(reduction, 13, 1000, 1); });
    double tp = timed([&] { b = max_valuedness(reduction, 13, 1000, jobs); });
    bool same = a.k == b.k && a.witness_input == b.witness_input;
    row("valuedness walker n=13", ts, tp, same);
  }
  {
    std::uint64_t a = 0, b = 0;
    double ts = timed([&] { a = max_ambiguity(reduction, 12, 40, 1'000, 1); });
    double tp =
        timed([&] { b = max_ambiguity(reduction, 12, 40, 1'000, jobs); });
    row("ambiguity walker n=12", ts, tp, a == b);
  }
  {
    std::uint64_t a = 0, b = 0;
    double ts = timed([&] { a = max_valuedness(exbt, 60, 1000, 1).k; });
    double tp = timed([&] { b = max_valuedness(exbt, 60, 1000, jobs).k; });
    row("valuedness exbt n=60", ts, tp, a == b);
  }
  {
    Relation a, b;
    Domain d{12, 48};
    double ts = timed([&] { a = enumerate_relation(constr, d, 1); });
    double tp = timed([&] { b = enumerate_relation(constr, d, jobs); });
    row("relation constr n=12", ts, tp, a == b);
  }
  return 0;
}
