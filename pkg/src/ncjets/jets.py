"""Jet modules, the factorization theorem, and representability checks.

The order-k jet of a module P is the quotient of A tensor P by the
submodule generated by all (k+1)-fold tensor deviations of 1 tensor p,
closed under the outer left action.  Over a commutative algebra every
order-k operator factors uniquely through it; over a noncommutative one
that fails, and the failure is witnessed by a nonzero residual in the
factorization identity.  The two-sided first jet (inside
A tensor P tensor A) repairs the story for the restricted first-order
class, and representability_bar1 verifies that on any input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .diffop import DefinitionDomainError, diff_bar1, diff_commutative, stage_by_tag
from .linalg import Matrix, Subspace, closure_under, hstack, joint_kernel, solve
from .modules import (
    BimoduleRep,
    HomSpace,
    TensorOneSided,
    TensorTwoSided,
    hom_left_linear,
    require_central,
)

VERDICT_ISO = "isomorphism"
VERDICT_INJ = "injective-not-surjective"
VERDICT_NOT_INJ = "not-injective"
VERDICT_NOT_CONTAINED = "image-not-contained"


class OrderViolationError(ValueError):
    """The map is not an operator of the requested order."""


class NotLeftLinearError(ValueError):
    """The map fails left linearity on the tensor ambient."""


@dataclass(frozen=True)
class JetModule:
    """Quotient of a tensor ambient by the jet relations.

    projection/section realize the quotient; left_ops (and, when the
    relations are invariant, bullet_ops) are the induced actions;
    jet_map sends p to the class of 1 tensor p (tensor 1).
    """

    base: BimoduleRep
    order: int
    two_sided: bool
    ambient_dim: int
    mu: Subspace
    projection: Matrix
    section: Matrix
    dim: int
    left_ops: tuple[Matrix, ...]
    bullet_ops: Optional[tuple[Matrix, ...]]
    right_ops: Optional[tuple[Matrix, ...]]
    bullet_right_ops: Optional[tuple[Matrix, ...]]
    jet_map: Matrix

    @property
    def bullet_well_defined(self) -> bool:
        return self.bullet_ops is not None


def _invariant(ops: Sequence[Matrix], sub: Subspace) -> bool:
    if sub.is_zero() or sub.is_full():
        return True
    field = ops[0].field
    moved = np.vstack(
        [field.reduce_array(np.dot(sub.basis.a, op.a.T)) for op in ops]
    )
    return sub.contains_all(moved)


def jet_module(P: BimoduleRep, k: int) -> JetModule:
    """Order-k jet of P: (A tensor P) / mu^(k+1).

    mu^(k+1) is generated by the (k+1)-fold deviation words applied to
    1 tensor p, p over a basis of P, and closed under the outer action
    b (a tensor p) = (b a) tensor p.  The induced inner action
    b . (a tensor p) = a tensor (b p) is attached only when the
    relations are invariant under it (always, when A is commutative).
    """
    require_central(P)
    if k < 0:
        raise OrderViolationError("jet order must be >= 0")
    t = TensorOneSided(P)
    field = t.field
    emb = t.embedding
    level = [emb.col(u) for u in range(P.dim)]
    for _ in range(k + 1):
        level = [d.apply(v) for d in t.deltas for v in level]
    seed = Subspace.from_spanning(field, t.dim, level)
    mu = closure_under(list(t.outer), seed)
    assert _invariant(t.outer, mu), "jet relations must be closed under the outer action"
    quot = mu.quotient()
    q, s = quot.projection, quot.section
    # invariance of mu makes every outer operator descend; q op s realizes it
    left_ops = [quot.induced(op) for op in t.outer]
    bullet_ops = None
    if _invariant(t.inner, mu):
        bullet_ops = tuple(quot.induced(op) for op in t.inner)
    jmap = q @ emb
    jet = JetModule(
        base=P,
        order=k,
        two_sided=False,
        ambient_dim=t.dim,
        mu=mu,
        projection=q,
        section=s,
        dim=quot.dim,
        left_ops=tuple(left_ops),
        bullet_ops=bullet_ops,
        right_ops=None,
        bullet_right_ops=None,
        jet_map=jmap,
    )
    _check_generation(jet)
    return jet


def two_sided_jet1(P: BimoduleRep) -> JetModule:
    """First-order two-sided jet: (A tensor P tensor A) / mu^1.

    mu^1 is generated by delta_bar^c delta^b (1 tensor p tensor 1) and
    closed under both outer actions.
    """
    require_central(P)
    t = TensorTwoSided(P)
    field = t.field
    emb = t.embedding
    n = t.algebra.dim
    gens = []
    for b in range(n):
        for c in range(n):
            for u in range(P.dim):
                gens.append(t.delta_bars[c].apply(t.deltas[b].apply(emb.col(u))))
    outer = list(t.outer_left) + list(t.outer_right)
    mu = closure_under(outer, Subspace.from_spanning(field, t.dim, gens))
    assert _invariant(outer, mu)
    quot = mu.quotient()
    q, s = quot.projection, quot.section
    left_ops = tuple(quot.induced(op) for op in t.outer_left)
    right_ops = tuple(quot.induced(op) for op in t.outer_right)
    bullet_ops = (
        tuple(quot.induced(op) for op in t.inner_left)
        if _invariant(t.inner_left, mu)
        else None
    )
    bullet_right_ops = (
        tuple(quot.induced(op) for op in t.inner_right)
        if _invariant(t.inner_right, mu)
        else None
    )
    jet = JetModule(
        base=P,
        order=1,
        two_sided=True,
        ambient_dim=t.dim,
        mu=mu,
        projection=q,
        section=s,
        dim=quot.dim,
        left_ops=left_ops,
        bullet_ops=bullet_ops,
        right_ops=right_ops,
        bullet_right_ops=bullet_right_ops,
        jet_map=q @ emb,
    )
    _check_generation(jet)
    return jet


def _check_generation(jet: JetModule):
    """The module closure of the jet-map image must be the whole quotient."""
    field = jet.projection.field
    image = Subspace.from_spanning(
        field, jet.dim, [jet.jet_map.col(u) for u in range(jet.base.dim)]
    )
    ops = list(jet.left_ops) + (list(jet.right_ops) if jet.right_ops else [])
    generated = closure_under(ops, image)
    assert generated.is_full(), "jet map image must generate the quotient"


# ---------------------------------------------------------------------------
# hom sides and the comparison map


def _hom_conditions(
    jet_ops: Sequence[Matrix], target_ops: Sequence[Matrix], jet_dim: int, tdim: int, field
) -> list[Matrix]:
    it = Matrix.identity(field, tdim)
    ij = Matrix.identity(field, jet_dim)
    return [jo.T.kron(it) - ij.kron(to) for jo, to in zip(jet_ops, target_ops)]


def _rho_matrix(jet: JetModule, Q: BimoduleRep) -> Matrix:
    # f (tdim x d) goes to f . jet_map, in column-major hom coordinates
    iq = Matrix.identity(Q.algebra.field, Q.dim)
    return jet.jet_map.T.kron(iq)


def _collapse_conditions_one_sided(jet: JetModule, Q: BimoduleRep) -> list[Matrix]:
    """Vanishing conditions on phi for f(a tensor p) = a phi(p) to kill mu.

    The tensor ambient is free as a left module on the P-leg, so maps on
    the quotient correspond exactly to phi in Hom_K(P, Q) satisfying
    these rows, and f . J = phi; the generation invariant (checked at
    construction) makes that correspondence injective.
    """
    P = jet.base
    n = P.algebra.dim
    field = P.algebra.field
    conds = []
    for w in jet.mu.basis_vectors():
        blocks = []
        for u in range(P.dim):
            m = Matrix.zeros(field, Q.dim, Q.dim)
            for i in range(n):
                c = w[i * P.dim + u]
                if c != 0:
                    m = m + Q.left[i].scale(c)
            blocks.append(m)
        conds.append(hstack(blocks))
    return conds


def _collapse_conditions_two_sided(jet: JetModule, Q: BimoduleRep) -> list[Matrix]:
    """Same as above for f(a tensor p tensor c) = a phi(p) c."""
    P = jet.base
    n = P.algebra.dim
    field = P.algebra.field
    sandwich = [[Q.right[j] @ Q.left[i] for j in range(n)] for i in range(n)]
    conds = []
    for w in jet.mu.basis_vectors():
        blocks = []
        for u in range(P.dim):
            m = Matrix.zeros(field, Q.dim, Q.dim)
            for i in range(n):
                for j in range(n):
                    c = w[(i * P.dim + u) * n + j]
                    if c != 0:
                        m = m + sandwich[i][j].scale(c)
            blocks.append(m)
        conds.append(hstack(blocks))
    return conds


@dataclass(frozen=True)
class RepresentabilityReport:
    tag: str
    order: int
    jet_dim: int
    hom_side_dim: int
    diff_side_dim: int
    image_dim: int
    verdict: str
    image: Subspace
    diff_side: Subspace
    witness: Optional[np.ndarray]
    witness_kind: Optional[str]

    @property
    def is_isomorphism(self) -> bool:
        return self.verdict == VERDICT_ISO


def _compare_image_with_stage(
    tag: str, order: int, jet: JetModule, hom_side_dim: int, image: Subspace, stage: Subspace
) -> RepresentabilityReport:
    witness = None
    kind = None
    if image.dim < hom_side_dim:
        verdict = VERDICT_NOT_INJ
        kind = "hom-side map killed by composition with the jet map"
    elif image == stage:
        verdict = VERDICT_ISO
    elif image <= stage:
        verdict = VERDICT_INJ
        for b in stage.basis_vectors():
            if not image.contains(b):
                witness = b
                kind = "operator in the filtration stage missing from the image"
                break
    else:
        verdict = VERDICT_NOT_CONTAINED
        for b in image.basis_vectors():
            if not stage.contains(b):
                witness = b
                kind = "image element outside the filtration stage"
                break
    return RepresentabilityReport(
        tag=tag,
        order=order,
        jet_dim=jet.dim,
        hom_side_dim=hom_side_dim,
        diff_side_dim=stage.dim,
        image_dim=image.dim,
        verdict=verdict,
        image=image,
        diff_side=stage,
        witness=witness,
        witness_kind=kind,
    )


def representability_check(
    P: BimoduleRep, Q: BimoduleRep, k: int, def_tag: str = "comm-inductive"
) -> RepresentabilityReport:
    """Compare left-linear maps out of the order-k jet with a filtration stage.

    Hom_A(J^k(P), Q) is computed through the free-module parametrization
    of _collapse_conditions_one_sided, under which pushing forward along
    f -> f . J^k is the identity on phi; the image of rho is therefore
    the solution subspace itself, compared against the stage-k subspace
    of the tagged filtration, with a witness for any failure.
    """
    require_central(P, Q)
    jet = jet_module(P, k)
    conds = _collapse_conditions_one_sided(jet, Q)
    image = joint_kernel(conds) if conds else Subspace.full(
        P.algebra.field, P.dim * Q.dim
    )
    stage = stage_by_tag(P, Q, k, def_tag)
    return _compare_image_with_stage(def_tag, k, jet, image.dim, image, stage)


def representability_bar1(P: BimoduleRep, Q: BimoduleRep) -> RepresentabilityReport:
    """Bimodule maps out of the two-sided first jet versus the bar1 class."""
    require_central(P, Q)
    jet = two_sided_jet1(P)
    conds = _collapse_conditions_two_sided(jet, Q)
    image = joint_kernel(conds) if conds else Subspace.full(
        P.algebra.field, P.dim * Q.dim
    )
    stage = diff_bar1(P, Q)
    return _compare_image_with_stage("bar1", 1, jet, image.dim, image, stage)


# ---------------------------------------------------------------------------
# factorization through the jet


@dataclass(frozen=True)
class Factorization:
    jet: JetModule
    factor: Matrix  # map on the quotient, target dim x jet dim
    unique: bool

    def compose_with_jet_map(self) -> Matrix:
        return self.factor @ self.jet.jet_map


def factorize(
    P: BimoduleRep,
    Q: BimoduleRep,
    delta: Matrix,
    k: int,
    jet: Optional[JetModule] = None,
) -> Factorization:
    """The unique left-linear f on J^k(P) with f . J^k = delta.

    Only defined over commutative algebras, and only for operators of
    order k (membership is verified first).  Uniqueness is re-derived:
    the homogeneous system must have a trivial solution space.
    """
    require_central(P, Q)
    if not P.algebra.is_commutative:
        raise DefinitionDomainError("factorization requires a commutative algebra")
    hs = HomSpace(P, Q)
    stage = diff_commutative(P, Q, k).stages[k]
    if not stage.contains(hs.vec(delta)):
        raise OrderViolationError(f"map is not an order-{k} differential operator")
    if jet is None:
        jet = jet_module(P, k)
    field = P.algebra.field
    conds = _hom_conditions(jet.left_ops, Q.left, jet.dim, Q.dim, field)
    rho = _rho_matrix(jet, Q)
    hom_side = joint_kernel(conds)
    # solve rho(f) = delta inside the left-linear solution space
    target = hs.vec(delta)
    restricted = Matrix._raw(
        field, field.reduce_array(np.dot(rho.a, hom_side.basis.a.T))
    )
    coeff = solve(restricted, target)
    if coeff is None:
        raise OrderViolationError(
            "no left-linear factorization exists; the jet does not represent this operator"
        )
    fvec = field.reduce_array(np.dot(coeff, hom_side.basis.a))
    fmat = Matrix._raw(
        field, np.asarray(fvec, dtype=object).reshape((Q.dim, jet.dim), order="F").copy()
    )
    unique = joint_kernel([restricted]).is_zero()
    return Factorization(jet=jet, factor=fmat, unique=unique)


# ---------------------------------------------------------------------------
# the factorization identity and its failure witnesses


def _check_left_linear(t: TensorOneSided, Q: BimoduleRep, f: Matrix):
    if f.shape != (Q.dim, t.dim):
        raise NotLeftLinearError(f"f must be {Q.dim} x {t.dim}, got {f.shape}")
    for i, (lo, lq) in enumerate(zip(t.outer, Q.left)):
        if f @ lo != lq @ f:
            raise NotLeftLinearError(f"f is not left-linear against basis element {i}")


def factorization_residual(
    P: BimoduleRep,
    Q: BimoduleRep,
    f: Matrix,
    b_tuple: Sequence,
    p: np.ndarray,
) -> np.ndarray:
    """Difference of the two sides of the order-k factorization identity.

    f must be a left-linear map on the full tensor A tensor P (checked).
    b_tuple lists algebra elements, each either a basis index or a
    coordinate vector; the identity applies their hom-space deviations
    to f . J on one side and their tensor deviations to 1 tensor p on
    the other:

        delta_{b_0} ... delta_{b_k} (f . J)(p)  -  f(delta^{b_0} ... delta^{b_k}(1 tensor p))

    Zero for every input over a commutative algebra and for single b's
    anywhere; nonzero tuples witness the failure of left jets.
    """
    require_central(P, Q)
    t = TensorOneSided(P)
    _check_left_linear(t, Q, f)
    hs = HomSpace(P, Q)
    field = t.field
    v = hs.vec(f @ t.embedding)
    p = np.asarray(p, dtype=object)
    w = t.embedding.apply(p)
    for b in reversed(list(b_tuple)):
        if isinstance(b, int):
            dv, dw = hs.deltas[b], t.deltas[b]
        else:
            dv, dw = hs.delta(b), t.delta(b)
        v = dv.apply(v)
        w = dw.apply(w)
    lhs = hs.unvec(v).apply(p)
    return field.reduce_array(lhs - f.apply(w))


@dataclass(frozen=True)
class ResidualWitness:
    b_indices: tuple[int, ...]
    p_index: int
    f: Matrix
    residual: np.ndarray


def residual_witness_search(
    P: BimoduleRep, Q: BimoduleRep, k: int
) -> Optional[ResidualWitness]:
    """First nonzero residual over basis (k+1)-tuples, basis p, and a basis
    of left-linear maps on the tensor ambient; None when all vanish.

    Enumeration is lexicographic (tuple, then p, then the RREF hom
    basis), so the reported witness is deterministic.
    """
    require_central(P, Q)
    t = TensorOneSided(P)
    n = P.algebra.dim
    field = P.algebra.field
    flin = hom_left_linear(list(t.outer), list(Q.left), field)
    hs = HomSpace(P, Q)
    emb = t.embedding
    fmats = []
    for v in flin.basis_vectors():
        fmat = Matrix._raw(
            field, np.asarray(v, dtype=object).reshape((Q.dim, t.dim), order="F").copy()
        )
        fmats.append((fmat, hs.vec(fmat @ emb)))
    punits = [
        np.array(
            [field.one if i == u else field.zero for i in range(P.dim)], dtype=object
        )
        for u in range(P.dim)
    ]
    for b_indices in itertools.product(range(n), repeat=k + 1):
        # delta-word applications depend only on (f, tuple) and (p, tuple)
        moved_phis = []
        for fmat, phi_vec in fmats:
            v = phi_vec
            for b in reversed(b_indices):
                v = hs.deltas[b].apply(v)
            moved_phis.append(hs.unvec(v))
        for p_index, p in enumerate(punits):
            w = emb.col(p_index)
            for b in reversed(b_indices):
                w = t.deltas[b].apply(w)
            for (fmat, _), moved in zip(fmats, moved_phis):
                res = field.reduce_array(moved.apply(p) - fmat.apply(w))
                if any(x != 0 for x in res):
                    return ResidualWitness(
                        b_indices=tuple(b_indices), p_index=p_index, f=fmat, residual=res
                    )
    return None
