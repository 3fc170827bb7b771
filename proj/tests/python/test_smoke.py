import math
import os
import subprocess
from fractions import Fraction

import numpy as np
import pytest

import inducedym as iy


def test_representations():
    assert iy.weyl_dimension([2, 1, 0]) == 8
    assert iy.casimir2([1, 0]) == 2
    assert sum(1 for _ in iy.signatures_in_box(2, 1)) == 6
    assert abs(iy.character([1, 0], [0.3, -0.7]) - (np.exp(0.3j) + np.exp(-0.7j))) < 1e-14


def test_linear_law_exact_and_float():
    w = iy.wilson_exact(3, n_b=2, alpha_b="1/3")
    assert Fraction(w["exact"]) == Fraction(2, 3)
    assert iy.wilson_loop_one_plaquette(3, n_b=2, alpha_b=1 / 3) == pytest.approx(2 / 3, rel=1e-12)


def test_missing_representation():
    c = iy.char_coefficient_exact([1, 1], n_b=1, alpha_b="3/5")
    assert Fraction(c["exact"]) == 0


def test_u1_coefficients():
    for n in range(-3, 4):
        assert iy.char_coefficient_ratio([n], n_b=1, alpha_b=0.4) == pytest.approx(0.4 ** abs(n), rel=1e-13)


def test_moments():
    m = iy.moments(3, 2)
    assert m["trace_square"] == pytest.approx(10 / 3, abs=1e-8)
    assert m["b1"] / m["b2"] == pytest.approx(0.5, abs=1e-8)


def test_cauchy_torus():
    value, tail = iy.z_genus(1, 1, 1.0, kind="cauchy", max_abs=40)
    assert value == pytest.approx(1 / math.tanh(0.5), rel=1e-8)
    assert tail < 1e-8


def test_torus_dual_matches_oracle_and_lattice():
    torus = iy.CellComplex.hypercubic([2, 2], [True, True])
    assert (torus.num_sites, torus.num_links, torus.num_plaquettes) == (4, 8, 4)
    z, tail = iy.dual_partition(torus, 0.3, 20)
    assert tail < 1e-8
    assert z == pytest.approx(iy.u1_oracle(torus, 0.3), rel=1e-8)
    lat, _ = iy.lattice_partition(1, [0.3] * 4, 1, 1, max_abs=10)
    assert lat == pytest.approx(z * (1 - 0.09) ** 4, rel=1e-12)


def test_complex_json_round_trip():
    cube = iy.CellComplex.hypercubic([1, 1, 1], [False, False, False])
    again = iy.CellComplex.from_json(cube.to_json())
    assert again.to_json() == cube.to_json()


def test_wilson_loop_on_plaquette():
    sq = iy.CellComplex.hypercubic([1, 1], [False, False])
    w, _ = iy.dual_wilson(sq, sq.plaquette_boundary(0), 0.25, 24)
    assert w == pytest.approx(0.25, rel=1e-14)


def test_monte_carlo_one_plaquette():
    sq = iy.CellComplex.hypercubic([1, 1], [False, False])
    r = iy.monte_carlo(sq, 2, n_b=2, alpha_b=0.5, measurements=20000, seed=11)
    p = r["observables"]["plaquette"]
    assert abs(p["mean"] - 1.0) < 4 * p["error"]
    assert r["unitarity_defect"] < 1e-10


def test_fock_identity():
    rng = np.random.default_rng(3)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    u = q * (np.diag(r) / abs(np.diag(r)))
    assert iy.fock_check(u, 0.3, 2, 40) < 1e-10


def test_errors_carry_module_and_code():
    with pytest.raises(iy.InducedYMError, match=r"weights\.domain"):
        iy.char_coefficient([0, 0], n_b=1, alpha_b=1.5)


@pytest.mark.skipif("INDUCEDYM_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_reports_errors_as_json():
    out = subprocess.run([os.environ["INDUCEDYM_CLI"], "coeff", "--nc", "2", "--nb", "1", "--alpha-b", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 1
    assert '"weights.domain"' in out.stdout
