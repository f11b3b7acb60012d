import numpy as np
import pytest

import avesolve

EX4_A = np.array([[3.0, -2.0], [-2.0, 3.0]])


def test_example2_one_step():
    r = avesolve.solve([[1.5, -1.25], [0.0, 1.5]], [4.0, 16.0])
    assert r["status"] == "Converged"
    assert r["iterations"] == 1
    np.testing.assert_allclose(r["x"], [88.0, 32.0], atol=1e-12)


def test_example5_from_one_minus_one():
    r = avesolve.solve([[3.0, -1.0], [-4.0, 3.0]], [-5.0, -4.0], x0=[1.0, -1.0])
    assert r["iterations"] == 2
    np.testing.assert_allclose(r["iterates"][1], [-6.0, -7.0], atol=1e-12)
    np.testing.assert_allclose(r["x"], [-2.0, -3.0], atol=1e-12)


def test_classify_branches():
    assert avesolve.classify(EX4_A, [-4.0, -16.0])["verdict"] == "UniqueSolution"
    assert avesolve.classify(EX4_A, [1.0, 1.0])["verdict"] == "NoSolution"
    many = avesolve.classify(EX4_A, [1.0, -1.0])
    assert many["verdict"] == "ExistsNotUnique"
    np.testing.assert_allclose(many["conditions"]["v"], [1.0, 1.0])


def test_diagnostics_norm():
    d = avesolve.diagnostics([[3.0, -1.0], [-4.0, 3.0]])
    assert d["satisfies_3b"]
    assert d["norm_a_inv"] == pytest.approx(1.1708, abs=1e-3)


def test_oracle():
    s = avesolve.enumerate_solutions(EX4_A, [-4.0, -16.0])
    assert s["count"] == "One"
    np.testing.assert_allclose(s["isolated"][0], [-4.0, -6.0])
    assert avesolve.enumerate_solutions(EX4_A, [1.0, -1.0])["count"] == "ContinuumSuspected"
    with pytest.raises(avesolve.DimensionTooLarge):
        avesolve.enumerate_solutions(np.eye(21) * 3, np.ones(21))


def test_generate_and_roundtrip(tmp_path):
    p = avesolve.generate("rand3a", n=4, seed=9)
    assert np.array_equal(p["A"], avesolve.generate("rand3a", n=4, seed=9)["A"])
    path = str(tmp_path / "p.ave")
    avesolve.save(path, p["A"], p["b"], p["metadata"])
    q = avesolve.load(path)
    assert np.array_equal(p["A"], q["A"])
    assert np.array_equal(p["b"], q["b"])
    assert q["metadata"]["seed"] == "9"
    text = avesolve.dumps(p["A"], p["b"])
    assert np.array_equal(avesolve.loads(text)["b"], p["b"])


def test_errors():
    with pytest.raises(avesolve.DimensionMismatch):
        avesolve.solve(np.eye(2), [1.0])
    with pytest.raises(avesolve.ParseError):
        avesolve.loads("garbage")
