#include "scare/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "scare/io.hpp"

namespace scare {

unsigned campaign_threads() {
  const char* env = std::getenv("SCARE_THREADS");
  if (env == nullptr) return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0) return 0;
  return static_cast<unsigned>(v);
}

namespace {

RunRecord run_one(const BenchmarkSpec& spec, SolverKind kind, const SolverConfig& cfg) {
  RunRecord rec;
  rec.benchmark = spec;
  rec.solver = kind;
  rec.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  try {
    const ScareProblem p = make_benchmark(spec);
    SolverConfig run_cfg = cfg;
    if (run_cfg.x0_policy == X0Policy::Given) run_cfg.x0_policy = X0Policy::Zero;
    const SymMatrix x0 = initial_iterate(p, run_cfg);
    rec.report = solve(p, kind, x0, run_cfg);
  } catch (const ScareError& e) {
    rec.error = e.code();
    rec.message = e.what();
  }
  rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

}  // namespace

std::vector<RunRecord> run_campaign(const std::vector<BenchmarkSpec>& specs,
                                    const std::vector<SolverKind>& solvers,
                                    const SolverConfig& cfg, std::optional<unsigned> threads) {
  const std::size_t total = specs.size() * solvers.size();
  std::vector<RunRecord> out(total);
  auto job = [&](std::size_t idx) {
    out[idx] = run_one(specs[idx / solvers.size()], solvers[idx % solvers.size()], cfg);
  };
  const unsigned workers = std::min<std::size_t>(threads.value_or(campaign_threads()), total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) job(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) job(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

void export_history(std::ostream& out, const RunRecord& record) {
  write_history_csv(out, record.report);
}

void export_counts(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "benchmark,solver,status,care_solves,lyap_solves,fp_iterations,newton_steps,"
         "outer_iterations,final_nres,wall_ms\n";
  char buf[64];
  for (const RunRecord& r : records) {
    const SolveCounts& c = r.report.counts;
    std::string status = r.error ? std::string(to_string(*r.error))
                                 : (r.report.converged ? "converged" : "not_converged");
    std::snprintf(buf, sizeof buf, "%.6e", r.report.final_nres());
    out << describe(r.benchmark) << ',' << to_string(r.solver) << ',' << status << ','
        << c.care_solves << ',' << c.lyap_solves << ',' << c.fp_iterations << ','
        << c.newton_steps << ',' << r.report.history.size() << ',' << (r.error ? "" : buf) << ',';
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(r.wall_ns) / 1e6);
    out << buf << '\n';
  }
}

}  // namespace scare
