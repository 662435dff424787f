#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scare/campaign.hpp"
#include "scare/io.hpp"
#include "scare/moebius.hpp"
#include "scare/oracle.hpp"
#include "scare/solvers.hpp"

namespace {

enum Exit { kOk = 0, kNotConverged = 2, kInvalid = 3, kSolverError = 4 };

bool is_input_error(scare::ErrorCode c) {
  using scare::ErrorCode;
  return c == ErrorCode::InvalidInput || c == ErrorCode::InvalidProblem ||
         c == ErrorCode::DimensionMismatch || c == ErrorCode::UnknownBenchmark;
}

struct SolveArgs {
  std::string problem;
  std::string benchmark;
  std::uint64_t seed = scare::kDefaultNoiseSeed;
  std::string solver = "fpc";
  double tol = 1e-12;
  int max_iter = 0;
  std::string x0 = "zero";
  double alpha = 0.0;
  double gamma = 0.0;
  double warm_tol = 0.01;
  bool warm_absolute = false;
  std::string history;
  std::string out;
};

struct VerifyArgs {
  std::string problem;
  std::string x;
  double tol = 1e-10;
};

struct BenchArgs {
  std::string examples = "all";
  std::uint64_t seed = scare::kDefaultNoiseSeed;
  std::string out = "bench_out";
  std::string solvers = "fpc,fpc-nt,fpc-mnt,gl-fp";
  double tol = 1e-12;
};

struct ExportArgs {
  std::string benchmark;
  std::uint64_t seed = scare::kDefaultNoiseSeed;
  std::string out;
};

scare::ScareProblem load_problem(const std::string& path, const std::string& benchmark,
                                 std::uint64_t seed) {
  if (!path.empty() == !benchmark.empty()) {
    throw scare::ScareError(scare::ErrorCode::InvalidInput,
                            "give exactly one of --problem or --benchmark");
  }
  scare::ScareProblem p = path.empty()
                              ? scare::make_benchmark(scare::parse_benchmark(benchmark, seed))
                              : scare::read_problem(path);
  scare::validate(p);
  return p;
}

int run_solve(const SolveArgs& a) {
  const scare::ScareProblem p = load_problem(a.problem, a.benchmark, a.seed);
  const scare::SolverKind kind = scare::parse_solver(a.solver);
  scare::SolverConfig cfg;
  cfg.outer_tol = a.tol;
  cfg.warm_threshold = a.warm_tol;
  cfg.warm_relative = !a.warm_absolute;
  if (a.max_iter > 0) cfg.max_outer = cfg.max_fp_iter = a.max_iter;
  if (a.alpha > 0.0) cfg.alpha = a.alpha;
  if (a.gamma > 0.0) cfg.gamma = a.gamma;
  std::optional<scare::SymMatrix> given;
  if (a.x0 == "zero" || a.x0 == "warm-care") {
    cfg.x0_policy = scare::parse_x0_policy(a.x0);
  } else {
    cfg.x0_policy = scare::X0Policy::Given;
    given = scare::read_matrix(a.x0);
  }
  cfg.check();
  const scare::SymMatrix x0 = scare::initial_iterate(p, cfg, given);
  const scare::SolveReport rep = scare::solve(p, kind, x0, cfg);

  if (!a.history.empty()) {
    std::ofstream out(a.history);
    if (!out) throw scare::ScareError(scare::ErrorCode::InvalidInput, "cannot write " + a.history);
    scare::write_history_csv(out, rep);
  }
  if (!a.out.empty()) scare::write_matrix(a.out, rep.x);

  const scare::SolveCounts& c = rep.counts;
  std::printf("solver        %s\n", a.solver.c_str());
  std::printf("converged     %s\n", rep.converged ? "yes" : "no");
  std::printf("iterations    %zu\n", rep.history.size());
  std::printf("final_nres    %.3e\n", rep.final_nres());
  std::printf("care_solves   %d\nlyap_solves   %d\nnewton_steps  %d\nfp_iterations %d\n",
              c.care_solves, c.lyap_solves, c.newton_steps, c.fp_iterations);
  std::printf("monotone      %s\n", std::string(scare::to_string(rep.monotone_direction)).c_str());
  std::printf("wall_ms       %.3f\n", static_cast<double>(rep.wall_ns) / 1e6);
  return rep.converged ? kOk : kNotConverged;
}

int run_verify(const VerifyArgs& a) {
  const scare::ScareProblem p = load_problem(a.problem, "", 0);
  const scare::Matrix raw = scare::read_matrix(a.x);
  if (raw.rows() != p.n() || raw.cols() != p.n()) {
    throw scare::ScareError(scare::ErrorCode::DimensionMismatch, "X must be n x n");
  }
  const double asym = scare::fro(raw - raw.transpose()) / (1.0 + scare::fro(raw));
  const scare::SymMatrix x = scare::symmetrize(raw);
  const scare::ResidualReport rr = scare::normalized_residual(p, x);
  const bool psd = scare::is_psd(x, 1e-10);
  const scare::CareCoefficients cc = scare::assemble_care(p, x);
  const double abscissa = scare::spectral_abscissa(cc.a_c - cc.g_c * x);
  const bool ms = scare::mean_square_stable(p, scare::feedback_gain(p, x));

  std::printf("nres              %.3e\n", rr.nres);
  std::printf("asymmetry         %.3e\n", asym);
  std::printf("psd               %s\n", psd ? "yes" : "no");
  std::printf("closed_loop_max   %.6e\n", abscissa);
  std::printf("mean_square_stable %s\n", ms ? "yes" : "no");

  bool agrees = true;
  if (p.n() == 1 && p.m() == 1) {
    const double root = scare::scalar_scare_solve(p);
    const double rel = std::abs(x(0, 0) - root) / std::max(1.0, std::abs(root));
    std::printf("scalar_oracle     %.17g (rel diff %.3e)\n", root, rel);
    agrees = rel <= 1e-8;
  } else {
    try {
      const scare::SolveReport ref = scare::fpc_mnt(p);
      const double rel = scare::fro(ref.x - x) / std::max(1e-300, scare::fro(ref.x));
      std::printf("reference_solver  fpc-mnt %s, rel diff %.3e\n",
                  ref.converged ? "converged" : "not converged", rel);
      if (ref.converged) agrees = rel <= 1e-8;
    } catch (const scare::ScareError& e) {
      std::printf("reference_solver  failed: %s\n", e.what());
    }
  }
  const bool ok = rr.nres <= a.tol && psd && abscissa < 0.0 && ms && agrees;
  std::printf("verified          %s\n", ok ? "yes" : "no");
  return ok ? kOk : kNotConverged;
}

std::vector<scare::SolverKind> parse_solvers(const std::string& text) {
  std::vector<scare::SolverKind> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(scare::parse_solver(item));
  }
  return out;
}

std::string file_safe(std::string s) {
  for (char& ch : s) {
    if (ch == ':' || ch == '=') ch = '_';
  }
  return s;
}

int run_bench(const BenchArgs& a) {
  const auto specs = scare::parse_benchmark_list(a.examples, a.seed);
  const auto solvers = parse_solvers(a.solvers);
  scare::SolverConfig cfg;
  cfg.outer_tol = a.tol;
  cfg.check();
  std::filesystem::create_directories(a.out);
  const auto records = scare::run_campaign(specs, solvers, cfg);
  for (const auto& r : records) {
    const std::string name = file_safe(scare::describe(r.benchmark)) + "_" +
                             std::string(scare::to_string(r.solver)) + ".csv";
    std::ofstream out(std::filesystem::path(a.out) / name);
    scare::export_history(out, r);
  }
  std::ofstream counts(std::filesystem::path(a.out) / "counts.csv");
  scare::export_counts(counts, records);
  scare::export_counts(std::cout, records);
  return kOk;
}

int run_export(const ExportArgs& a) {
  const scare::ScareProblem p = scare::make_benchmark(scare::parse_benchmark(a.benchmark, a.seed));
  if (a.out.empty() || a.out == "-") {
    std::cout << scare::problem_to_json(p) << '\n';
  } else {
    scare::write_problem(a.out, p);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic continuous-time algebraic Riccati equation solver"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve one SCARE");
  solve->add_option("--problem", sa.problem, "Problem JSON file");
  solve->add_option("--benchmark", sa.benchmark, "Built-in benchmark instead of a file (ex1..ex8)");
  solve->add_option("--seed", sa.seed, "Noise seed for --benchmark");
  solve->add_option("--solver", sa.solver, "fpc|nt|mnt|fpc-nt|fpc-mnt|gl-fp")
      ->check(CLI::IsMember({"fpc", "nt", "mnt", "fpc-nt", "fpc-mnt", "gl-fp"}));
  solve->add_option("--tol", sa.tol, "NRes stopping tolerance");
  solve->add_option("--max-iter", sa.max_iter, "Outer iteration cap");
  solve->add_option("--x0", sa.x0, "zero, warm-care, or a matrix JSON file");
  solve->add_option("--alpha", sa.alpha, "Lyapunov doubling shift");
  solve->add_option("--gamma", sa.gamma, "CARE doubling / Moebius shift");
  solve->add_option("--warm-tol", sa.warm_tol, "Spectral-norm step for the hybrid phase switch");
  solve->add_flag("--warm-absolute", sa.warm_absolute,
                  "Compare the switch step against --warm-tol unscaled by ||X||");
  solve->add_option("--history", sa.history, "Write the residual history CSV here");
  solve->add_option("--out", sa.out, "Write the solution matrix JSON here");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a candidate solution");
  verify->add_option("--problem", va.problem, "Problem JSON file")->required();
  verify->add_option("--x", va.x, "Solution matrix JSON file")->required();
  verify->add_option("--tol", va.tol, "Accepted NRes");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the benchmark campaign");
  bench->add_option("--examples", ba.examples, "Comma list, e.g. ex1,ex5:m=20 or all");
  bench->add_option("--seed", ba.seed, "Noise seed for ex5..ex8");
  bench->add_option("--out", ba.out, "Output directory");
  bench->add_option("--solvers", ba.solvers, "Comma list of solvers");
  bench->add_option("--tol", ba.tol, "NRes stopping tolerance");

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "Write a built-in benchmark as problem JSON");
  exp->add_option("--benchmark", ea.benchmark, "ex1..ex8 with optional :m= / :eps=")->required();
  exp->add_option("--seed", ea.seed, "Noise seed");
  exp->add_option("--out", ea.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*solve) return run_solve(sa);
    if (*verify) return run_verify(va);
    if (*bench) return run_bench(ba);
    if (*exp) return run_export(ea);
  } catch (const scare::ScareError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return is_input_error(e.code()) ? kInvalid : kSolverError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolverError;
  }
  return kInvalid;
}
