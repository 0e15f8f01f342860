from itertools import product

import numpy as np
import pytest

from spabel.errors import BudgetError
from spabel.linalg import FinAbPresentation, ModMatrix
from spabel.shadow import (
    GENERATION_NOTE,
    hypothesis_flags,
    kernel_parametrization,
    kernel_structure,
    normal_closure,
    normal_closure_check,
    parametrize_report,
    plain_span,
    plain_span_check,
    z_membership_probe,
)
from spabel.symplectic import GeneratorLabel


def brute_kernel_g1(L):
    # every 2x2 matrix I + L*A mod L^2 with determinant 1 mod L^2
    m = L * L
    out = set()
    for a, b, c, d in product(range(L), repeat=4):
        M = ((1 + L * a) % m, L * b % m, L * c % m, (1 + L * d) % m)
        if (M[0] * M[3] - M[1] * M[2]) % m == 1:
            out.add(M)
    return out


@pytest.fixture(scope="module")
def K13():
    return kernel_parametrization(1, 3)


def test_g1_matches_brute_force(K13):
    brute = brute_kernel_g1(3)
    mine = {tuple(int(x) for x in M.ravel()) for M in K13.elements}
    assert len(brute) == 27
    assert mine == brute


def test_g1_structure(K13):
    assert kernel_structure(K13, 3) == FinAbPresentation(0, (3, 3, 3))


def test_membership(K13):
    assert ModMatrix([[1, 3], [0, 1]], 9) in K13
    assert ModMatrix([[1, 1], [0, 1]], 9) not in K13


def test_flags():
    assert hypothesis_flags(1, 3) == ["outside theorem hypotheses (g >= 3)"]
    assert hypothesis_flags(3, 3) == []
    assert "outside theorem hypotheses (L odd)" in hypothesis_flags(3, 4)


def test_budget_refusal():
    with pytest.raises(BudgetError):
        kernel_parametrization(3, 3)
    with pytest.raises(BudgetError):
        parametrize_report(2, 3, budget=1000)


def test_parametrize_report_g1():
    rep = parametrize_report(1, 3)
    assert rep["order"] == "27" and rep["passed"]
    assert rep["structure"]["torsion"] == ["3", "3", "3"]
    assert rep["flags"]


def test_g1_generation():
    assert len(plain_span(1, 3)) == 9
    assert len(normal_closure(1, 3)) == 27
    rep = plain_span_check(1, 3)
    assert rep["equals_kernel"] is False and rep["note"] == GENERATION_NOTE


def test_even_level_runs():
    rep = parametrize_report(1, 2)
    assert rep["order"] == "8" and rep["passed"]
    assert "outside theorem hypotheses (L odd)" in rep["flags"]


@pytest.mark.parametrize("L", [3, 5])
def test_g1_z_probe_empty(L):
    rep = z_membership_probe(1, L)
    assert rep["labels"] == []
    assert rep["equals_kernel"]


def test_g2_normal_closure():
    rep = normal_closure_check(2, 3)
    assert rep["order_factored"] == "3^10" and rep["equals_kernel"] is True
    assert rep["contains_plain_span"] and rep["plain_span_order"] == "729"


def test_g2_z_probe():
    rep = z_membership_probe(2, 3)
    assert {(e["i"], e["j"]) for e in rep["labels"]} == {(1, 2), (2, 1)}
    for e in rep["labels"]:
        assert e["in_normal_closure"] and not e["in_plain_span"]


def test_plain_span_contains_generators():
    H = plain_span(2, 3)
    X = GeneratorLabel("X", 1, 2, 3).matrix(2)
    arr = np.array(X.tolist(), dtype=np.int64) % 9
    assert arr in H
