"""Differential-operator filtrations of Hom_K(P, Q).

Six constructions of "order r differential operator" live here.  Over a
commutative algebra the two classical ones (iterated deviations, and the
inductive kernel tower) agree and every noncommutative one collapses to
them; over a noncommutative algebra the left, right, and two-sided
filtrations genuinely differ, and compare_definitions measures exactly
how, with explicit witnesses for strict containments.

All stage subspaces live in the flat coordinates of the Hom space, and
every function rejects non-central bimodules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import Matrix, Subspace, closure_under, joint_kernel
from .modules import BimoduleRep, HomSpace, require_central

MAX_ORDER = 4

TAGS = (
    "comm-iterated",
    "comm-inductive",
    "left-center",
    "left-sum",
    "right",
    "two-sided",
    "bar1",
)


class DefinitionDomainError(ValueError):
    """The requested definition does not apply to this algebra or order."""


def _check_order(r: int, max_order: int):
    if r < 0:
        raise DefinitionDomainError("order must be >= 0")
    if r > max_order:
        raise DefinitionDomainError(
            f"order {r} exceeds the configured cap {max_order}; pass max_order= to raise it"
        )


@dataclass(frozen=True)
class Filtration:
    """Increasing chain of operator subspaces, indexed 0..r."""

    hom_space: HomSpace
    tag: str
    stages: tuple[Subspace, ...]

    def stage(self, k: int) -> Subspace:
        return self.stages[k]

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.stages]

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.stages, self.stages[1:]))


def _preimage_joint(ops: Sequence[Matrix], target: Subspace) -> Subspace:
    """{v : op v in target for every op}."""
    if target.is_full():
        return Subspace.full(target.field, ops[0].cols)
    q = target.quotient().projection
    return joint_kernel([q @ op for op in ops])


def _span_family(ops: Sequence[Matrix], seed: Subspace) -> Subspace:
    """span{op v : v in seed}; closed already since each family composes to itself."""
    if seed.is_zero():
        return seed
    blocks = [seed.field.reduce_array(np.dot(seed.basis.a, op.a.T)) for op in ops]
    return Subspace.from_spanning(seed.field, seed.ambient_dim, np.vstack(blocks))


# ---------------------------------------------------------------------------
# commutative definitions


def diff_commutative(
    P: BimoduleRep, Q: BimoduleRep, r: int, mode: str = "inductive", max_order: int = MAX_ORDER
) -> Filtration:
    """Classical filtration over a commutative algebra.

    iterated:  stage[k] = joint kernel of all (k+1)-fold products of the
               basis deviations delta_a.
    inductive: stage[0] = joint kernel of the delta_a; stage[k] pulls
               stage[k-1] back through every delta_a.
    """
    require_central(P, Q)
    _check_order(r, max_order)
    if not P.algebra.is_commutative:
        raise DefinitionDomainError(
            f"commutative filtration over noncommutative algebra {P.algebra.name!r}"
        )
    if mode not in ("inductive", "iterated"):
        raise DefinitionDomainError(f"unknown commutative mode {mode!r}")
    hs = HomSpace(P, Q)
    deltas = hs.deltas
    stages = [joint_kernel(list(deltas))]
    if mode == "inductive":
        for _ in range(r):
            stages.append(_preimage_joint(deltas, stages[-1]))
    else:
        words = list(deltas)
        for _ in range(r):
            words = [d @ w for d in deltas for w in words]
            stages.append(joint_kernel(words))
    return Filtration(hs, f"comm-{mode}", tuple(stages))


# ---------------------------------------------------------------------------
# left definitions


def diff_left(
    P: BimoduleRep, Q: BimoduleRep, r: int, mode: str = "center", max_order: int = MAX_ORDER
) -> Filtration:
    """Left filtrations.

    center: stage[k] is the submodule (under both a phi and phi . a)
            generated by the lift {phi : delta_a phi in stage[k-1]}; the
            base stage is generated by the joint delta kernel.
    sum:    stage[k] = span{b w : w with delta_a w in stage[k-1]} + stage[k-1],
            where b runs over the left action.
    """
    require_central(P, Q)
    _check_order(r, max_order)
    if mode not in ("center", "sum"):
        raise DefinitionDomainError(f"unknown left mode {mode!r}")
    hs = HomSpace(P, Q)
    deltas = hs.deltas
    z0 = joint_kernel(list(deltas))
    if mode == "center":
        left_pair = list(hs.left) + list(hs.bullet_left)
        stages = [closure_under(left_pair, z0)]
        for _ in range(r):
            lift = _preimage_joint(deltas, stages[-1])
            stages.append(closure_under(left_pair, lift))
    else:
        stages = [_span_family(hs.left, z0)]
        for _ in range(r):
            w = _preimage_joint(deltas, stages[-1])
            stages.append(_span_family(hs.left, w) + stages[-1])
    return Filtration(hs, f"left-{mode}", tuple(stages))


def diff_right(
    P: BimoduleRep, Q: BimoduleRep, r: int, max_order: int = MAX_ORDER
) -> Filtration:
    """Mirror of the left sum filtration: delta_bar kernels moved by phi b."""
    require_central(P, Q)
    _check_order(r, max_order)
    hs = HomSpace(P, Q)
    dbars = hs.delta_bars
    stages = [_span_family(hs.right, joint_kernel(list(dbars)))]
    for _ in range(r):
        w = _preimage_joint(dbars, stages[-1])
        stages.append(_span_family(hs.right, w) + stages[-1])
    return Filtration(hs, "right", tuple(stages))


def diff_two_sided(
    P: BimoduleRep, Q: BimoduleRep, r: int, max_order: int = MAX_ORDER
) -> Filtration:
    """Operators expressible in both the left and the right sum form.

    The zero stage stores the span of (left zero order) union (right zero
    order); the union itself is not a subspace, so membership of single
    elements is reported separately by two_sided_zero_order_membership.
    """
    require_central(P, Q)
    _check_order(r, max_order)
    hs = HomSpace(P, Q)
    left0 = _span_family(hs.left, joint_kernel(list(hs.deltas)))
    right0 = _span_family(hs.right, joint_kernel(list(hs.delta_bars)))
    stages = [left0 + right0]
    for _ in range(r):
        u = _preimage_joint(hs.deltas, stages[-1])
        v = _preimage_joint(hs.delta_bars, stages[-1])
        left_form = _span_family(hs.left, u) + stages[-1]
        right_form = _span_family(hs.right, v) + stages[-1]
        stages.append(left_form & right_form)
    return Filtration(hs, "two-sided", tuple(stages))


def two_sided_zero_order_membership(P: BimoduleRep, Q: BimoduleRep, phi: Matrix) -> dict:
    """Where a single map sits at order zero: left form, right form, or only the span."""
    require_central(P, Q)
    hs = HomSpace(P, Q)
    v = hs.vec(phi)
    left0 = _span_family(hs.left, joint_kernel(list(hs.deltas)))
    right0 = _span_family(hs.right, joint_kernel(list(hs.delta_bars)))
    in_left = left0.contains(v)
    in_right = right0.contains(v)
    return {
        "left_zero_order": in_left,
        "right_zero_order": in_right,
        "in_span": in_left or in_right or (left0 + right0).contains(v),
    }


def diff_bar1(P: BimoduleRep, Q: BimoduleRep) -> Subspace:
    """Two-sided first-order operators killed by every delta_bar_c . delta_b."""
    require_central(P, Q)
    hs = HomSpace(P, Q)
    t1 = diff_two_sided(P, Q, 1).stages[1]
    mixed = [db @ d for db in hs.delta_bars for d in hs.deltas]
    return t1 & joint_kernel(mixed)


# ---------------------------------------------------------------------------
# dispatch and comparison


def filtration_by_tag(
    P: BimoduleRep, Q: BimoduleRep, r: int, tag: str, max_order: int = MAX_ORDER
) -> Filtration:
    if tag == "comm-iterated":
        return diff_commutative(P, Q, r, mode="iterated", max_order=max_order)
    if tag == "comm-inductive":
        return diff_commutative(P, Q, r, mode="inductive", max_order=max_order)
    if tag == "left-center":
        return diff_left(P, Q, r, mode="center", max_order=max_order)
    if tag == "left-sum":
        return diff_left(P, Q, r, mode="sum", max_order=max_order)
    if tag == "right":
        return diff_right(P, Q, r, max_order=max_order)
    if tag == "two-sided":
        return diff_two_sided(P, Q, r, max_order=max_order)
    raise DefinitionDomainError(f"unknown definition tag {tag!r}")


def stage_by_tag(
    P: BimoduleRep, Q: BimoduleRep, k: int, tag: str, max_order: int = MAX_ORDER
) -> Subspace:
    """Stage-k subspace of the tagged filtration; bar1 is its own single stage."""
    if tag == "bar1":
        if k != 1:
            raise DefinitionDomainError("bar1 is a first-order class; use order 1")
        return diff_bar1(P, Q)
    return filtration_by_tag(P, Q, k, tag, max_order=max_order).stages[k]


def _relation(u: Subspace, v: Subspace) -> str:
    fwd, back = u <= v, v <= u
    if fwd and back:
        return "equal"
    if fwd:
        return "subset"
    if back:
        return "superset"
    return "incomparable"


def _containment_witness(big: Subspace, small: Subspace):
    for b in big.basis_vectors():
        if not small.contains(b):
            return b
    return None


def compare_definitions(P: BimoduleRep, Q: BimoduleRep, r: int, max_order: int = MAX_ORDER) -> dict:
    """All applicable filtrations to stage r, with pairwise relations.

    Every strict containment (and every incomparability) carries a
    witness vector from the side that sticks out.
    """
    require_central(P, Q)
    _check_order(r, max_order)
    commutative = P.algebra.is_commutative
    tags = list(TAGS[:-1]) if commutative else ["left-center", "left-sum", "right", "two-sided"]
    filts = {tag: filtration_by_tag(P, Q, r, tag, max_order=max_order) for tag in tags}
    dims = {tag: filts[tag].dims for tag in tags}
    relations = {}
    witnesses = {}
    for i, t1 in enumerate(tags):
        for t2 in tags[i + 1 :]:
            rels = []
            for k in range(r + 1):
                u, v = filts[t1].stages[k], filts[t2].stages[k]
                rel = _relation(u, v)
                rels.append(rel)
                if rel != "equal":
                    key = f"{t1} vs {t2} @ {k}"
                    if rel == "subset":
                        witnesses[key] = _containment_witness(v, u)
                    elif rel == "superset":
                        witnesses[key] = _containment_witness(u, v)
                    else:
                        witnesses[key] = _containment_witness(u, v)
            relations[f"{t1} vs {t2}"] = rels
    collapse = None
    if commutative:
        collapse = all(
            rel == "equal" for rels in relations.values() for rel in rels
        )
    return {
        "order": r,
        "commutative": commutative,
        "tags": tags,
        "dims": dims,
        "relations": relations,
        "witnesses": witnesses,
        "commutative_collapse": collapse,
    }
