#include "doctest.h"

#include <string>

#include "helpers.hpp"
#include "scare/config.hpp"
#include "scare/errors.hpp"
#include "scare/linalg.hpp"
#include "scare/problem.hpp"

using namespace scare;
using scare::testing::random_problem;
using scare::testing::random_psd;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const ScareError& e) {
    return e.code();
  }
  FAIL("no ScareError thrown");
  return ErrorCode::InvalidInput;
}

ScareProblem scalar_problem() {
  Matrix a(1, 1), b(1, 1), q(1, 1), r(1, 1), a0(1, 1), b0(1, 1);
  a << 1.0;
  b << 1.0;
  q << 1.0;
  r << 1.0;
  a0 << 0.5;
  b0 << 0.2;
  return make_problem(a, b, q, r, {}, {a0}, {b0});
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("norms and spectra of small matrices") {
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << -3.0, 1.0, 2.0;
    CHECK(spectral_norm(d) == doctest::Approx(3.0));
    CHECK(lambda_min(d) == doctest::Approx(-3.0));
    CHECK(lambda_max(d) == doctest::Approx(2.0));
    CHECK(spectral_abscissa(d) == doctest::Approx(2.0));
    CHECK(spectral_radius(d) == doctest::Approx(3.0));
    CHECK_FALSE(is_psd(d, 1e-10));
    CHECK(is_psd(d.cwiseAbs(), 1e-10));

    Matrix rot(2, 2);
    rot << 0.0, -1.0, 1.0, 0.0;
    CHECK(spectral_abscissa(rot) == doctest::Approx(0.0));
    CHECK(spectral_radius(rot) == doctest::Approx(1.0));
  }

  TEST_CASE("kron follows the block layout a(i,j)*b") {
    Matrix a(2, 2), b(1, 2);
    a << 1, 2, 3, 4;
    b << 1, -1;
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 2);
    REQUIRE(k.cols() == 4);
    CHECK(k(1, 2) == 4.0);
    CHECK(k(1, 3) == -4.0);
    CHECK(k(0, 1) == -1.0);
  }

  TEST_CASE("solvers reject singular matrices") {
    const Matrix z = Matrix::Zero(2, 2);
    CHECK(code_of([&] { SymSolver s(z, "R"); }) == ErrorCode::SingularWeight);
    CHECK(code_of([&] { LuSolver s(z, ErrorCode::SingularPivot, "I+GH"); }) ==
          ErrorCode::SingularPivot);
    Matrix w(2, 2);
    w << 2, 1, 1, 2;
    const SymSolver s(w, "R");
    CHECK((w * s.solve(Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)).norm() < 1e-14);
  }

  TEST_CASE("error messages carry the code name") {
    const ScareError e(ErrorCode::NotHurwitz, "E");
    CHECK(std::string(e.what()) == "NotHurwitz: E");
    CHECK(to_string(ErrorCode::OracleSizeCap) == "OracleSizeCap");
  }
}

TEST_SUITE("config") {
  TEST_CASE("defaults and validation") {
    SolverConfig cfg;
    CHECK(cfg.outer_tol == 1e-12);
    CHECK(cfg.warm_threshold == 0.01);
    CHECK(cfg.warm_relative);
    CHECK(cfg.effective_newton_inner_tol() == cfg.outer_tol);
    cfg.check();
    cfg.max_outer = 0;
    CHECK(code_of([&] { cfg.check(); }) == ErrorCode::InvalidInput);
    CHECK(parse_x0_policy("warm-care") == X0Policy::WarmCare);
    CHECK(code_of([] { parse_x0_policy("random"); }) == ErrorCode::InvalidInput);
    CHECK(default_shift(0.5, 4) == 1.0);
    CHECK(default_shift(8.0, 4) == doctest::Approx(4.0));
  }
}

TEST_SUITE("problem_core") {
  TEST_CASE("make_problem fills a zero L") {
    const ScareProblem p = scalar_problem();
    CHECK(p.l.rows() == 1);
    CHECK(p.l(0, 0) == 0.0);
    CHECK(p.noise_count() == 1);
    validate(p);
  }

  TEST_CASE("validate rejects malformed problems") {
    ScareProblem p = scalar_problem();
    p.b = Matrix::Ones(2, 1);
    CHECK(code_of([&] { validate(p); }) == ErrorCode::DimensionMismatch);

    p = scalar_problem();
    p.r(0, 0) = -1.0;
    CHECK(code_of([&] { validate(p); }) == ErrorCode::InvalidProblem);

    p = scalar_problem();
    p.l(0, 0) = 2.0;  // Q − L R⁻¹ Lᵀ = −3
    CHECK(code_of([&] { validate(p); }) == ErrorCode::InvalidProblem);

    std::mt19937_64 rng(7);
    p = random_problem(rng, 3, 2, 1);
    p.q(0, 1) += 1.0;
    CHECK(code_of([&] { validate(p); }) == ErrorCode::InvalidProblem);

    p = random_problem(rng, 3, 2, 2);
    p.b0.pop_back();
    CHECK(code_of([&] { validate(p); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("scalar residual and gain in closed form") {
    const ScareProblem p = scalar_problem();
    SymMatrix x(1, 1);
    x << 2.0;
    // 2ax + q + a0²x − (xb + a0 b0 x)²/(r + b0² x)
    const double expect = 4.0 + 1.0 + 0.5 - (2.2 * 2.2) / 1.08;
    CHECK(residual(p, x)(0, 0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(feedback_gain(p, x)(0, 0) == doctest::Approx(-2.2 / 1.08).epsilon(1e-14));
    const PiBlocks pi = pi_of(p, x);
    CHECK(pi.pi11(0, 0) == doctest::Approx(0.5));
    CHECK(pi.pi12(0, 0) == doctest::Approx(0.2));
    CHECK(pi.pi22(0, 0) == doctest::Approx(0.08));
    CHECK(pi.stacked().rows() == 2);
  }

  TEST_CASE("scalar root has a vanishing normalized residual") {
    const ScareProblem p = scalar_problem();
    SymMatrix x(1, 1);
    x << 2.4144414830830607;  // brentq on the scalar residual
    const ResidualReport rep = normalized_residual(p, x);
    CHECK(rep.nres < 1e-14);
    CHECK(rep.ax_term == doctest::Approx(2.0 * x(0, 0)));
    CHECK(rep.q_term == doctest::Approx(1.0));
    CHECK_FALSE(rep.degenerate_denominator);
  }

  TEST_CASE("residual identities on random problems") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto n = static_cast<Eigen::Index>(2 + trial % 4);
      const auto m = static_cast<Eigen::Index>(1 + trial % 2);
      const ScareProblem p = random_problem(rng, n, m, 1 + trial % 3);
      const SymMatrix x = random_psd(rng, n);
      const SymMatrix r = residual(p, x);
      const double tol = 1e-11 * (1.0 + fro(r));
      CHECK(fro(r - r.transpose()) == 0.0);

      // [X −I] Ω(X) [X; −I] = ℛ(X)
      Matrix w(2 * n, n);
      w << x, -Matrix::Identity(n, n);
      CHECK(fro(w.transpose() * omega(p, x) * w - r) < tol);

      // ℛ(X) = A_cᵀX + XA_c − XG_cX + H_c
      const CareCoefficients c = assemble_care(p, x);
      CHECK(fro(c.a_c.transpose() * x + x * c.a_c - x * c.g_c * x + c.h_c - r) < tol);

      // A_{X_k} = A_k − G_k X_k and Π_{X_k}(X_k) + M_{X_k} = H_k + X_k G_k X_k
      const NewtonOperators op = newton_operators(p, x);
      CHECK(fro(op.a_xk - (c.a_c - c.g_c * x)) < 1e-11 * (1.0 + fro(op.a_xk)));
      const SymMatrix lhs = op.project(pi_of(p, x)) + op.m_xk;
      CHECK(fro(lhs - mnt_rhs(p, x)) < 1e-12 * (1.0 + fro(lhs)));
      CHECK(fro(lhs - (c.h_c + x * c.g_c * x)) < 1e-11 * (1.0 + fro(lhs)));
    }
  }

  TEST_CASE("omega is Loewner monotone") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index n = 2 + trial % 3;
      const ScareProblem p = random_problem(rng, n, 1 + trial % 2, 2);
      const SymMatrix y = random_psd(rng, n);
      const SymMatrix x = y + random_psd(rng, n);
      const SymMatrix d = omega(p, x) - omega(p, y);
      CHECK(lambda_min(d) >= -1e-10 * (1.0 + fro(d)));
    }
  }
}
