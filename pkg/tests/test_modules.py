from fractions import Fraction

import numpy as np
import pytest

from ncjets.catalog import builtin, names
from ncjets.linalg import QQ, Matrix, unit_vector, vector
from ncjets.modules import (
    BimoduleRep,
    BimoduleValidationError,
    CentralityRequired,
    HomSpace,
    hom_A,
    hom_AA,
    hom_left_linear,
    require_central,
    tensor_A_P,
    tensor_A_P_A,
)

from oracle_systems import hom_A_dim, hom_AA_dim

F = Fraction


def entry(name):
    return builtin(name)


def raw_mul(algebra):
    n = algebra.dim
    return [[[algebra.mul[i, j, k] for k in range(n)] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# bimodule validation


@pytest.mark.parametrize("name", names())
def test_regular_and_free_bimodules_validate(name):
    e = entry(name)
    assert e.module("self").dim == e.algebra.dim
    assert e.module("free2").dim == 2 * e.algebra.dim
    assert e.module("self").central and e.module("free2").central


def test_m2_with_left_matrices_on_the_right_fails():
    a = entry("m2").algebra
    with pytest.raises(BimoduleValidationError) as exc:
        BimoduleRep(a, a.left_ops, a.left_ops)
    assert exc.value.axiom == "right-associativity"
    assert exc.value.witness is not None


def test_noncentral_bimodule_flagged_and_rejected():
    a = entry("dual_numbers").algebra
    # right action sends eps to zero: a legal anti-action, but eps is central
    right = [Matrix.identity(QQ, 2), Matrix.zeros(QQ, 2, 2)]
    with pytest.raises(BimoduleValidationError) as exc:
        BimoduleRep(a, a.left_ops, right)
    assert exc.value.axiom == "centrality"
    loose = BimoduleRep(a, a.left_ops, right, check_central=False)
    assert not loose.central
    with pytest.raises(CentralityRequired):
        require_central(loose)


# ---------------------------------------------------------------------------
# hom space structure


def test_delta_of_unit_vanishes():
    for name in ("dual_numbers", "m2"):
        e = entry(name)
        hs = HomSpace(e.module("self"), e.module("self"))
        assert hs.delta(e.algebra.unit).is_zero()
        assert hs.delta_bar(e.algebra.unit).is_zero()


def test_linear_map_killed_by_delta_over_commutative_algebra():
    e = entry("dual_numbers")
    a = e.algebra
    hs = HomSpace(e.module("self"), e.module("self"))
    phi = a.left_ops[1]  # multiplication by eps is A-linear
    v = hs.vec(phi)
    for d in hs.deltas:
        assert all(x == 0 for x in d.apply(v))


def test_m2_transpose_delta_value():
    e = entry("m2")
    hs = HomSpace(e.module("self"), e.module("self"))
    # transpose swaps e12 and e21 in coordinates
    transpose = Matrix(QQ, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    d = hs.delta(vector(QQ, [0, 1, 0, 0]))  # a = e12
    moved = hs.unvec(d.apply(hs.vec(transpose)))
    out = moved.apply(unit_vector(QQ, 4, 2))  # evaluate at e21
    assert out.tolist() == [-1, 0, 0, 0]  # -e11


def test_delta_delta_bar_commute_on_all_catalog_hom_spaces():
    for name in names():
        e = entry(name)
        hs = HomSpace(e.module("self"), e.module("self"))
        for da in hs.deltas:
            for db in hs.delta_bars:
                assert da @ db == db @ da


def test_four_structures_are_module_actions():
    e = entry("t2")
    a = e.algebra
    hs = HomSpace(e.module("self"), e.module("self"))
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.mul[i, j]
            left_ij = hs.left[i] @ hs.left[j]
            assert left_ij == _combo(hs.left, prod)
            # bullet-left is contravariant: (phi . a) . b = phi . (a b)
            bl = hs.bullet_left[j] @ hs.bullet_left[i]
            assert bl == _combo(hs.bullet_left, prod)


def _combo(mats, coeffs):
    out = mats[0].scale(coeffs[0])
    for k in range(1, len(mats)):
        out = out + mats[k].scale(coeffs[k])
    return out


# ---------------------------------------------------------------------------
# hom_A / hom_AA


def test_hom_A_m2_is_right_multiplications():
    e = entry("m2")
    sub = hom_A(e.module("self"), e.module("self"))
    assert sub.dim == 4
    assert sub.dim == hom_A_dim(raw_mul(e.algebra))
    hs = HomSpace(e.module("self"), e.module("self"))
    for r in e.algebra.right_ops:
        assert sub.contains(hs.vec(r))


def test_hom_A_commutative_equals_dim():
    for name in ("dual_numbers", "trunc3", "product_QQ"):
        e = entry(name)
        assert hom_A(e.module("self"), e.module("self")).dim == e.algebra.dim


def test_hom_AA_m2_is_scalars():
    e = entry("m2")
    sub = hom_AA(e.module("self"), e.module("self"))
    assert sub.dim == 1
    assert sub.dim == hom_AA_dim(raw_mul(e.algebra))
    hs = HomSpace(e.module("self"), e.module("self"))
    assert sub.contains(hs.vec(Matrix.identity(QQ, 4)))


# ---------------------------------------------------------------------------
# tensor ambients


def test_tensor_one_sided_dims_and_unit_delta():
    for name in ("dual_numbers", "m2"):
        e = entry(name)
        t = tensor_A_P(e.module("free2"))
        assert t.dim == e.algebra.dim * 2 * e.algebra.dim
        assert t.delta(e.algebra.unit).is_zero()


def test_dual_numbers_double_delta_generator():
    e = entry("dual_numbers")
    t = tensor_A_P(e.module("self"))
    one_tensor_one = unit_vector(QQ, 4, 0)  # flat (i, u) = i * 2 + u
    d_eps = t.deltas[1]
    out = d_eps.apply(d_eps.apply(one_tensor_one))
    assert out.tolist() == [0, 0, 0, -2]  # -2 (eps tensor eps)


def test_tensor_two_sided_dims_and_commutation():
    for name in names():
        e = entry(name)
        t = tensor_A_P_A(e.module("self"))
        n = e.algebra.dim
        assert t.dim == n * n * n
        assert t.delta_bar(e.algebra.unit).is_zero()
        for d in t.deltas:
            for db in t.delta_bars:
                assert d @ db == db @ d


def test_tensor_embed_is_one_tensor_p():
    e = entry("dual_numbers")
    t = tensor_A_P(e.module("self"))
    emb = t.embedding
    assert list(emb.col(0)) == [1, 0, 0, 0]
    assert list(emb.col(1)) == [0, 1, 0, 0]


def test_order_zero_tensor_compatibility():
    # For every left-linear f on A tensor P, delta_b(f . J) = f . delta^b(1 tensor -)
    for name in names():
        e = entry(name)
        P = Q = e.module("self")
        t = tensor_A_P(P)
        hs = HomSpace(P, Q)
        flin = hom_left_linear(t.outer, Q.left, QQ)
        emb = t.embedding
        for fv in flin.basis_vectors():
            fmat = Matrix._raw(
                QQ, np.asarray(fv, dtype=object).reshape((Q.dim, t.dim), order="F").copy()
            )
            phi = fmat @ emb
            for b in range(e.algebra.dim):
                lhs = hs.unvec(hs.deltas[b].apply(hs.vec(phi)))
                rhs = fmat @ (t.deltas[b] @ emb)
                assert lhs == rhs
