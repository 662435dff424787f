#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "scare/care_sda.hpp"
#include "scare/errors.hpp"
#include "scare/lyap_sda.hpp"
#include "scare/oracle.hpp"

using namespace scare;
using scare::testing::random_hurwitz;
using scare::testing::random_matrix;
using scare::testing::random_psd;
using scare::testing::rel_diff;

namespace {

Matrix scalar(double v) {
  Matrix m(1, 1);
  m << v;
  return m;
}

}  // namespace

TEST_SUITE("care_sda") {
  TEST_CASE("scalar CARE matches the positive root") {
    // 2ax − gx² + h = 0 with a = 0.2, g = 0.245, h = 0.5
    const CareSolution s = solve_care(scalar(0.2), scalar(0.7 * 0.7 / 2.0), scalar(0.5));
    CHECK(s.x(0, 0) == doctest::Approx(2.4616852547548063).epsilon(1e-13));
    CHECK(s.care_residual < 1e-14);
    CHECK(s.closed_loop_abscissa < 0.0);
    CHECK(s.gamma == 1.0);
  }

  TEST_CASE("unstable open loop, stabilizing solution") {
    Matrix a(2, 2);
    a << 1.0, 1.0, 0.0, 2.0;
    const SymMatrix g = Matrix::Identity(2, 2);
    const SymMatrix h = Matrix::Identity(2, 2);
    const CareSolution s = solve_care(a, g, h);
    CHECK(s.care_residual < 1e-13);
    CHECK(s.closed_loop_abscissa < 0.0);
    CHECK(is_psd(s.x, 1e-12));
  }

  TEST_CASE("doubling preserves symmetry of G_k and H_k") {
    std::mt19937_64 rng(3);
    const Matrix a = random_matrix(rng, 4, 4);
    const Matrix b = random_matrix(rng, 4, 2);
    const SymMatrix g = b * b.transpose();
    const SymMatrix h = random_psd(rng, 4, 0.1);
    SdaState s = sda_initial_state(a, g, h, 2.0);
    for (int k = 0; k < 6; ++k) {
      s = sda_step(s);
      CHECK(fro(s.g_k - s.g_k.transpose()) <= 1e-12 * fro(s.g_k));
      CHECK(fro(s.h_k - s.h_k.transpose()) <= 1e-12 * fro(s.h_k));
    }
    CHECK(s.iteration == 6);
  }

  TEST_CASE("agrees with Newton-Kleinman on random instances") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index n = 2 + trial % 6;
      const Matrix a = random_matrix(rng, n, n);
      const Matrix b = random_matrix(rng, n, 1 + trial % 2);
      const Matrix c = random_matrix(rng, n, n);
      const SymMatrix g = b * b.transpose();
      const SymMatrix h = symmetrize(c.transpose() * c);
      // Bass: X₀ = P⁻¹ with (A + βI)P + P(A + βI)ᵀ = 2BBᵀ stabilizes A − GX₀.
      const double beta = spectral_radius(a) + 1.0;
      const Matrix shifted = -(a + beta * Matrix::Identity(n, n)).transpose();
      const SymMatrix pb = kron_lyap_solve(shifted, 2.0 * g);
      const SymMatrix x0 = symmetrize(pb.inverse());
      REQUIRE(is_hurwitz(a - g * x0));
      const SymMatrix ref = newton_kleinman_care(a, g, h, x0);
      const CareSolution s = solve_care(a, g, h);
      CHECK(rel_diff(s.x, ref) < 1e-9);
    }
  }

  TEST_CASE("large residual triggers a shift retry") {
    std::mt19937_64 rng(202);
    Matrix a, b, c;
    for (int i = 0; i <= 6; ++i) {
      a = random_matrix(rng, 1 + i % 12, 1 + i % 12);
      b = random_matrix(rng, a.rows(), 1 + i % 3);
      c = random_matrix(rng, a.rows(), a.rows());
    }
    const SymMatrix g = b * b.transpose();
    const SymMatrix h = symmetrize(c.transpose() * c);
    const double g0 = default_shift(fro(a), a.rows());
    SolverConfig fixed;
    fixed.gamma = g0;
    const CareSolution plain = solve_care(a, g, h, fixed);
    CHECK(plain.care_residual > 1e-10);
    const CareSolution s = solve_care(a, g, h);
    CHECK(s.gamma > g0);
    CHECK(s.care_residual < plain.care_residual);
    const SymMatrix ref = newton_kleinman_care(a, g, h, s.x);
    CHECK(rel_diff(s.x, ref) < 1e-9);
  }

  TEST_CASE("zero Hamiltonian data gives zero") {
    Matrix a = -Matrix::Identity(3, 3);
    const CareSolution s = solve_care(a, Matrix::Zero(3, 3), Matrix::Zero(3, 3));
    CHECK(fro(s.x) == 0.0);
  }
}

TEST_SUITE("lyap_sda") {
  TEST_CASE("scalar and diagonal closed forms") {
    CHECK(solve_lyapunov(scalar(-2.0), scalar(4.0))(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    Matrix e = Matrix::Zero(2, 2);
    e.diagonal() << -1.0, -4.0;
    const SymMatrix c = Matrix::Ones(2, 2);
    const SymMatrix y = solve_lyapunov(e, c);
    // y_ij = c_ij / −(e_i + e_j)
    CHECK(y(0, 0) == doctest::Approx(0.5));
    CHECK(y(0, 1) == doctest::Approx(0.2));
    CHECK(y(1, 1) == doctest::Approx(0.125));
  }

  TEST_CASE("Cayley form fixes the solution") {
    std::mt19937_64 rng(17);
    const Matrix e = random_hurwitz(rng, 5);
    const SymMatrix c = random_psd(rng, 5, 0.1);
    const LyapunovSolution s = solve_lyapunov_report(e, c, 1.5);
    CHECK(s.alpha == 1.5);
    CHECK(s.residual < 1e-14);
    const CayleyForm f = cayley_dare_form(e, c, 1.5);
    CHECK(fro(f.a_d.transpose() * s.y * f.a_d + f.h_d - s.y) < 1e-12 * fro(s.y));
    CHECK(spectral_radius(f.a_d) < 1.0);
  }

  TEST_CASE("agrees with the Kronecker oracle") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::Index n = 1 + trial % 10;
      const Matrix e = random_hurwitz(rng, n, 0.2 + 0.1 * (trial % 5));
      const SymMatrix c = random_psd(rng, n);
      CHECK(rel_diff(solve_lyapunov(e, c), kron_lyap_solve(e, c)) < 1e-10);
    }
  }

  TEST_CASE("non-Hurwitz and singular shifts are reported") {
    ErrorCode code = ErrorCode::InvalidInput;
    try {
      solve_lyapunov(scalar(1.0), scalar(1.0));
    } catch (const ScareError& err) {
      code = err.code();
    }
    CHECK(code == ErrorCode::NotHurwitz);

    code = ErrorCode::InvalidInput;
    try {
      cayley_dare_form(Matrix::Identity(2, 2), Matrix::Identity(2, 2), 1.0);
    } catch (const ScareError& err) {
      code = err.code();
    }
    CHECK(code == ErrorCode::SingularShift);
  }
}
