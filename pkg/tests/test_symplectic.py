from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spabel.linalg import IntMatrix, ModMatrix
from spabel.symplectic import (
    GeneratorLabel,
    SpLieElement,
    SymplecticElement,
    bms_generator_set,
    elementary_generator,
    generator_labels,
    has_level,
    is_sp_lie,
    is_symplectic,
    level_of,
    level_one_generators,
    omega,
    sp_lie_basis,
    sp_lie_dimension,
    symplectic_inverse,
)

from oracles import lie_condition_rows, nullity_mod_p


def test_omega_shape():
    W = omega(2)
    assert W.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert W @ W == -IntMatrix.identity(4)
    assert is_symplectic(W, 2)


def test_generator_blocks():
    assert GeneratorLabel("X", 1, 2, 5).matrix(2).tolist() == [
        [1, 0, 0, 0], [0, 1, 0, 0], [0, 5, 1, 0], [5, 0, 0, 1]]
    assert GeneratorLabel("Y", 1, 1, 3).matrix(2).tolist() == [
        [1, 0, 3, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert GeneratorLabel("Z", 1, 2, 3).matrix(2).tolist() == [
        [1, 3, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -3, 1]]


def test_label_validation():
    with pytest.raises(ValueError):
        GeneratorLabel("Z", 2, 2, 1)
    with pytest.raises(ValueError):
        GeneratorLabel("Q", 1, 2, 1)
    with pytest.raises(ValueError):
        GeneratorLabel("X", 0, 1, 1)
    assert GeneratorLabel("X", 3, 1, 2) == GeneratorLabel("X", 1, 3, 2)
    with pytest.raises(ValueError):
        GeneratorLabel("X", 1, 4, 1).matrix(3)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_all_generators_symplectic(g):
    for r in range(-9, 10):
        labels = generator_labels(g, r) if r else []
        for lab in labels:
            assert is_symplectic(lab.matrix(g), g), lab


@pytest.mark.parametrize("g", [2, 3])
def test_one_parameter_law(g):
    for lab in level_one_generators(g):
        for r, s in product([-4, -1, 2, 7], repeat=2):
            assert lab.with_r(r).matrix(g) @ lab.with_r(s).matrix(g) == lab.with_r(r + s).matrix(g)
        assert lab.matrix(g) @ lab.inverse().matrix(g) == IntMatrix.identity(2 * g)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_omega_conjugation_labels(g):
    W = omega(g)
    Winv = -W
    for r in (1, -3, 5):
        for lab in generator_labels(g, r):
            assert W @ lab.matrix(g) @ Winv == lab.omega_conjugate().matrix(g), lab
            assert lab.omega_conjugate().omega_conjugate() == lab


def test_symplectic_inverse():
    g = 3
    M = (GeneratorLabel("X", 1, 2, 3).matrix(g) @ GeneratorLabel("Z", 3, 1, -2).matrix(g)
         @ GeneratorLabel("Y", 2, 2, 7).matrix(g))
    assert symplectic_inverse(M, g) @ M == IntMatrix.identity(6)
    assert symplectic_inverse(M, g) == M.inverse()


def test_non_symplectic_rejected():
    M = IntMatrix.identity(4) * 2
    assert not is_symplectic(M, 2)
    with pytest.raises(ValueError):
        SymplecticElement.from_matrix(M, 2)
    with pytest.raises(ValueError):
        is_symplectic(IntMatrix.identity(3), 2)


def test_levels():
    g = 2
    e = elementary_generator(GeneratorLabel("Y", 1, 2, 6), g)
    assert e.level == 6 and e.in_level(3) and not e.in_level(4)
    f = elementary_generator(GeneratorLabel("X", 1, 1, 9), g)
    prod_ = e @ f
    assert prod_.level == level_of(prod_.matrix) == 3
    assert level_of(IntMatrix.identity(4)) == 0
    assert has_level(IntMatrix.identity(4), 7)
    assert (e @ e.inverse()).matrix == IntMatrix.identity(4)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("XYZ"), st.integers(1, 3), st.integers(1, 3),
                          st.integers(-3, 3)), min_size=1, max_size=8),
       st.sampled_from([2, 3, 5]))
def test_level_closed_under_products(parts, L):
    g = 3
    M = IntMatrix.identity(6)
    for fam, i, j, r in parts:
        if fam == "Z" and i == j:
            continue
        M = M @ GeneratorLabel(fam, i, j, L * r).matrix(g)
    assert is_symplectic(M, g)
    assert has_level(M, L)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_bms_set_counts(g):
    labels = bms_generator_set(g, 3)
    assert len(labels) == g * (g + 1)
    assert len(set(labels)) == len(labels)
    assert all(lab.r == 3 and lab.family in "XY" for lab in labels)
    assert len(level_one_generators(g)) == g * (g + 1) + g * (g - 1)


@pytest.mark.parametrize("g,L", [(1, 3), (2, 5), (3, 3), (4, 7)])
def test_lie_basis(g, L):
    basis = sp_lie_basis(g, L)
    assert len(basis) == sp_lie_dimension(g) == g * (2 * g + 1)
    assert all(is_sp_lie(b.matrix, g) for b in basis)
    # linearly independent mod a prime L: the flattened basis has full rank
    if L in (3, 5, 7):
        rows = [list(b.matrix.entries) for b in basis]
        assert nullity_mod_p(list(map(list, zip(*rows))), len(rows), L) == 0


@pytest.mark.parametrize("g,p", [(1, 3), (2, 3), (2, 5), (3, 7)])
def test_lie_dimension_by_elimination(g, p):
    assert nullity_mod_p(lie_condition_rows(g), 4 * g * g, p) == sp_lie_dimension(g)


def test_lie_count_g1_exhaustive():
    g, L = 1, 3
    hits = 0
    for entries in product(range(L), repeat=4):
        A = ModMatrix([list(entries[:2]), list(entries[2:])], L)
        hits += is_sp_lie(A, g)
    assert hits == L ** sp_lie_dimension(g) == 27


def test_lie_element_validation():
    with pytest.raises(ValueError):
        SpLieElement(1, 3, ModMatrix([[1, 0], [0, 1]], 3))
    a, b = sp_lie_basis(2, 5)[:2]
    assert (a + (-a)).is_zero()
    assert not (a + b).is_zero()
