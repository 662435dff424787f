import numpy as np
import pytest
from scipy.linalg import solve_continuous_are, solve_continuous_lyapunov

import pyscare


def test_deterministic_care_matches_scipy():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((4, 4))
    b = rng.standard_normal((4, 2))
    q = np.eye(4)
    r = np.eye(2)
    p = pyscare.Problem(a, b, q, r)
    rep = pyscare.solve(p, "fpc")
    assert rep.converged
    ref = solve_continuous_are(a, b, q, r)
    assert np.linalg.norm(rep.x - ref) <= 1e-9 * np.linalg.norm(ref)


def test_lyapunov_and_care_helpers():
    e = np.array([[-1.0, 2.0], [0.0, -3.0]])
    c = np.eye(2)
    y = pyscare.solve_lyapunov(e, c)
    assert np.allclose(y, solve_continuous_lyapunov(e.T, -c), atol=1e-12)
    x = pyscare.solve_care(np.array([[0.2]]), np.array([[0.245]]), np.array([[0.5]]))
    assert x[0, 0] == pytest.approx(2.4616852547548063, rel=1e-12)


@pytest.mark.parametrize("solver", ["fpc", "fpc-nt", "fpc-mnt", "gl-fp"])
def test_benchmark_solvers_agree(solver):
    p = pyscare.benchmark("ex1")
    base = pyscare.solve(p, "fpc").x
    rep = pyscare.solve(p, solver)
    assert rep.converged
    assert rep.final_nres <= 1e-12
    assert np.linalg.norm(rep.x - base) <= 1e-8 * np.linalg.norm(base)
    assert pyscare.mean_square_stable(p, pyscare.feedback_gain(p, rep.x))
    assert rep.history[0][0] == 1
    assert rep.history[-1][2] == rep.final_nres


def test_scalar_problem_and_rate():
    one = np.ones((1, 1))
    p = pyscare.Problem(one, one, one, one, A0=[0.5 * one], B0=[0.2 * one])
    assert pyscare.scalar_scare_solve(p) == pytest.approx(2.4144414830830607, rel=1e-12)
    x = pyscare.solve(p, "fpc-mnt").x
    assert abs(pyscare.nres(p, x)) < 1e-12
    rho, rho_full = pyscare.rlinear_rate(p, x)
    assert 0.0 <= rho < 1.0


def test_config_and_errors():
    cfg = pyscare.SolverConfig()
    cfg.max_outer = 2
    cfg.record_iterates = True
    p = pyscare.benchmark("ex3")
    rep = pyscare.solve(p, "fpc", config=cfg)
    assert not rep.converged
    assert len(rep.iterates) == 3
    with pytest.raises(pyscare.ScareError, match="InvalidInput"):
        pyscare.solve(p, "bogus")
    with pytest.raises(pyscare.ScareError, match="InvalidProblem"):
        pyscare.Problem(np.eye(2), np.ones((2, 1)), -np.eye(2), np.eye(1))
    with pytest.raises(pyscare.ScareError, match="NotHurwitz"):
        pyscare.solve(pyscare.benchmark("ex1"), "nt", x0=np.zeros((2, 2)))


def test_problem_json_round_trip():
    p = pyscare.benchmark("ex4")
    q = pyscare.parse_problem(p.to_json())
    assert np.array_equal(p.A, q.A)
    assert q.r == p.r == 1
