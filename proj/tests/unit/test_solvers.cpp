#include "doctest.h"

#include <string>

#include "helpers.hpp"
#include "scare/benchmarks.hpp"
#include "scare/care_sda.hpp"
#include "scare/errors.hpp"
#include "scare/moebius.hpp"
#include "scare/oracle.hpp"
#include "scare/solvers.hpp"

using namespace scare;
using scare::testing::random_matrix;
using scare::testing::random_problem;
using scare::testing::rel_diff;

namespace {

ScareProblem bench(const std::string& id) { return make_benchmark(parse_benchmark(id)); }

SymMatrix zero(const ScareProblem& p) { return SymMatrix::Zero(p.n(), p.n()); }

// Solutions from an independent fixed point on frozen CAREs solved by the
// Schur method (scipy.linalg.solve_continuous_are), iterated to 1e-14.
SymMatrix reference(const std::string& id) {
  if (id == "ex1") {
    Matrix x(2, 2);
    x << 0.06456725805281094, 0.02517663292023957, 0.02517663292023957, 0.2994842349991942;
    return x;
  }
  if (id == "ex2") {
    Matrix x(3, 3);
    x << 0.16086514885420153, -0.24096106134380513, -0.18083605794858837,
        -0.24096106134380513, 0.4619590389174013, 0.42142268739117544,
        -0.18083605794858837, 0.42142268739117544, 0.4914942171629169;
    return x;
  }
  if (id == "ex3") {
    Matrix x(2, 2);
    x << 0.2550357883380295, -0.6298669256778158, -0.6298669256778158, 2.279350917167639;
    return x;
  }
  Matrix x(2, 2);
  x << 2.0227491163912776, 1.012874304258448, 1.012874304258448, 1.0104906688142035;
  return x;
}

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("every algorithm reaches the reference solution") {
    for (const std::string id : {"ex1", "ex2", "ex3", "ex4"}) {
      CAPTURE(id);
      const ScareProblem p = bench(id);
      const SymMatrix ref = reference(id);
      for (const SolverKind kind :
           {SolverKind::Fpc, SolverKind::FpcNt, SolverKind::FpcMnt, SolverKind::GlFp}) {
        CAPTURE(to_string(kind));
        const SolveReport rep = solve(p, kind, zero(p));
        CHECK(rep.converged);
        CHECK(rep.final_nres() <= 1e-12);
        CHECK(rel_diff(rep.x, ref) < 1e-9);
      }
      const SolveReport nt = nt_fp_lyap_sda(p, ref + 1e-3 * Matrix::Identity(p.n(), p.n()));
      CHECK(nt.converged);
      CHECK(rel_diff(nt.x, ref) < 1e-9);
    }
  }

  TEST_CASE("iteration counts on the deterministic examples") {
    // Regression values of this implementation (seed independent).
    const ScareProblem p1 = bench("ex1");
    CHECK(fp_care_sda(p1, zero(p1)).counts.care_solves == 13);
    const SolveReport h = fpc_mnt(p1);
    CHECK(h.counts.care_solves == 3);
    CHECK(h.counts.lyap_solves == 10);
    const ScareProblem p4 = bench("ex4");
    CHECK(fp_care_sda(p4, zero(p4)).counts.care_solves == 7);
    CHECK(fp_scare(p4).counts.fp_iterations == 9);
  }

  TEST_CASE("history layout") {
    const ScareProblem p = bench("ex3");
    const SolveReport rep = fpc_nt(p);
    REQUIRE(rep.history.size() >= 3);
    CHECK(rep.history.front().phase == Phase::Fpc);
    CHECK(rep.history.back().phase == Phase::Nt);
    for (std::size_t i = 0; i < rep.history.size(); ++i) {
      CHECK(rep.history[i].iter == static_cast<int>(i) + 1);
      if (i > 0) CHECK(rep.history[i].wall_ns >= rep.history[i - 1].wall_ns);
    }
    CHECK(rep.counts.newton_steps ==
          static_cast<int>(std::count_if(rep.history.begin(), rep.history.end(),
                                         [](const HistoryEntry& e) { return e.phase == Phase::Nt; })));
    CHECK(to_string(Phase::Mnt) == "mnt");
  }

  TEST_CASE("nondecreasing iterates from zero") {
    SolverConfig cfg;
    cfg.record_iterates = true;
    const ScareProblem p = bench("ex2");
    const SolveReport rep = fp_care_sda(p, zero(p), cfg);
    CHECK(rep.monotone_direction == Monotone::Nondecreasing);
    REQUIRE(rep.iterates.size() == rep.history.size() + 1);
    for (std::size_t k = 1; k < rep.iterates.size(); ++k)
      CHECK(lambda_min(rep.iterates[k] - rep.iterates[k - 1]) >= -1e-10);
  }

  TEST_CASE("hitting the cap is not an error") {
    SolverConfig cfg;
    cfg.max_outer = 2;
    const ScareProblem p = bench("ex1");
    const SolveReport rep = fp_care_sda(p, zero(p), cfg);
    CHECK_FALSE(rep.converged);
    CHECK(rep.history.size() == 2);
  }

  TEST_CASE("modified Newton step solves the perturbed CARE") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      const ScareProblem p = random_problem(rng, 2 + trial % 3, 1 + trial % 2, 1 + trial % 2);
      const SymMatrix xk = fp_care_sda(p, zero(p)).x + 0.1 * Matrix::Identity(p.n(), p.n());
      SolverConfig cfg;
      cfg.max_outer = 1;
      const SymMatrix xk1 = mnt_fp_lyap_sda(p, xk, cfg).x;
      const SymMatrix r = mnt_equivalence_residual(p, xk, xk1);
      CHECK(fro(r) < 1e-10 * (1.0 + fro(xk1) * fro(xk1)));
    }
  }

  TEST_CASE("warm-care start is the frozen CARE solution at zero") {
    const ScareProblem p = bench("ex4");
    SolverConfig cfg;
    cfg.x0_policy = X0Policy::WarmCare;
    const SymMatrix x0 = initial_iterate(p, cfg);
    const CareCoefficients c = assemble_care(p, zero(p));
    CHECK(rel_diff(x0, solve_care(c.a_c, c.g_c, c.h_c).x) < 1e-14);
    cfg.x0_policy = X0Policy::Given;
    CHECK_THROWS_AS(initial_iterate(p, cfg), ScareError);
  }

  TEST_CASE("solver names") {
    CHECK(parse_solver("fpc-mnt") == SolverKind::FpcMnt);
    CHECK(parse_solver("gl-fp") == SolverKind::GlFp);
    CHECK(to_string(SolverKind::FpcNt) == "fpc-nt");
    CHECK_THROWS_AS(parse_solver("newton"), ScareError);
  }

  TEST_CASE("absolute switch keeps phase one longer on large solutions") {
    const ScareProblem p = bench("ex6");
    SolverConfig absolute;
    absolute.warm_relative = false;
    const SolveReport rel = fpc_mnt(p);
    const SolveReport abs = fpc_mnt(p, absolute);
    CHECK(rel.converged);
    CHECK(abs.converged);
    CHECK(rel.counts.care_solves < abs.counts.care_solves);
  }
}

TEST_SUITE("moebius_fp") {
  TEST_CASE("shuffle identities") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Index n = 1 + trial % 4;
      const Eigen::Index r = 1 + trial % 3;
      const Matrix x = random_matrix(rng, n, n);
      const Permutation s = shuffle_permutation(n, r);
      const Matrix lhs = s.transpose() * kron(x, Matrix::Identity(r, r)) * s;
      CHECK(fro(lhs - kron(Matrix::Identity(r, r), x)) == 0.0);

      const Permutation h = shuffle_hat_permutation(n, r);
      Matrix expect = Matrix::Zero(n * (r + 1), n * (r + 1));
      expect.topLeftCorner(n, n) = x;
      expect.bottomRightCorner(n * r, n * r) = kron(x, Matrix::Identity(r, r));
      CHECK(fro(h.transpose() * kron(x, Matrix::Identity(r + 1, r + 1)) * h - expect) == 0.0);
    }
  }

  TEST_CASE("transformed data") {
    const ScareProblem p = bench("ex2");
    const MoebiusData d = build_moebius(p, 2.0);
    const Eigen::Index n = p.n();
    const auto r = static_cast<Eigen::Index>(p.noise_count());
    CHECK(d.gamma == 2.0);
    CHECK(d.e_gamma.rows() == n * (r + 1));
    CHECK(d.e_gamma.cols() == n);
    CHECK(d.script_a.rows() == n * r);
    CHECK(fro(d.h_gamma - d.h_gamma.transpose()) < 1e-14 * fro(d.h_gamma));
    const SymMatrix qh = p.q - p.l * p.r.inverse() * p.l.transpose();
    CHECK(fro(d.c_hat.transpose() * d.c_hat - qh) < 1e-12 * (1.0 + fro(qh)));
    CHECK(fro(d.b_hat * d.b_hat.transpose() - p.b * p.r.inverse() * p.b.transpose()) < 1e-12);
  }

  TEST_CASE("first iterate is H_gamma") {
    const ScareProblem p = bench("ex1");
    SolverConfig cfg;
    cfg.record_iterates = true;
    cfg.max_fp_iter = 1;
    const SolveReport rep = fp_scare(p, 1.5, cfg);
    REQUIRE(rep.iterates.size() >= 1);
    CHECK(fro(rep.iterates.back() - build_moebius(p, 1.5).h_gamma) < 1e-15);
    CHECK(rep.history.front().phase == Phase::Gl);
  }

  TEST_CASE("limit does not depend on the shift") {
    for (const char* id : {"ex1", "ex3", "ex4"}) {
      const ScareProblem p = bench(id);
      const SolveReport r1 = fp_scare(p, 1.5);
      const SolveReport r2 = fp_scare(p, 4.0);
      REQUIRE(r1.converged);
      REQUIRE(r2.converged);
      CHECK(rel_diff(r1.x, r2.x) < 1e-8);
    }
  }

  TEST_CASE("singular shift is reported") {
    Matrix a(1, 1), b(1, 1), q(1, 1), r(1, 1), a0(1, 1), b0(1, 1);
    a << 2.0;
    b << 1.0;
    q << 1.0;
    r << 1.0;
    a0 << 0.1;
    b0 << 0.1;
    const ScareProblem p = make_problem(a, b, q, r, {}, {a0}, {b0});
    CHECK_THROWS_AS(build_moebius(p, 2.0), ScareError);
    const SolveReport rep = fp_scare(p);  // default shift 2 is retried doubled
    CHECK(rep.converged);
    CHECK(rep.x(0, 0) == doctest::Approx(scalar_scare_solve(p)).epsilon(1e-10));
  }
}
