#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scare/benchmarks.hpp"
#include "scare/config.hpp"
#include "scare/solvers.hpp"

namespace scare {

struct RunRecord {
  BenchmarkSpec benchmark;
  SolverKind solver = SolverKind::Fpc;
  SolverConfig config;
  SolveReport report;
  /// Empty on success; otherwise the error that ended the run.
  std::optional<ErrorCode> error;
  std::string message;
  std::int64_t wall_ns = 0;

  bool converged() const { return !error && report.converged; }
};

/// Parallelism from SCARE_THREADS (0 or unset-but-invalid = serial; unset =
/// hardware concurrency).
unsigned campaign_threads();

/// Runs every (benchmark, solver) pair. Per-run errors are captured in the
/// record. Output order is benchmark-major, then solver, regardless of the
/// thread count. Standalone nt/mnt start from initial_iterate(cfg).
std::vector<RunRecord> run_campaign(const std::vector<BenchmarkSpec>& specs,
                                    const std::vector<SolverKind>& solvers,
                                    const SolverConfig& cfg,
                                    std::optional<unsigned> threads = std::nullopt);

/// History CSV of one record (empty body for failed runs).
void export_history(std::ostream& out, const RunRecord& record);

/// One row per record: benchmark,solver,status,care_solves,lyap_solves,
/// fp_iterations,newton_steps,outer_iterations,final_nres,wall_ms.
void export_counts(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace scare
