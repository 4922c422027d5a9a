"""Klein invariants ``(n, a)`` of anti-holomorphic involutions.

``n`` counts the fixed circles and ``a`` is 0 when the complement of the fixed
set is disconnected, 1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import HyperellipticCurve, InvolutionKind, roots_closed_under_antipode
from .errors import NoSuchInvolution

__all__ = [
    "KleinInvariants",
    "validate_invariants",
    "admissible_pairs",
    "classify_hyperelliptic",
    "fixed_locus_topology",
]


@dataclass(frozen=True)
class KleinInvariants:
    g: int
    n: int
    a: int
    kind: InvolutionKind
    method: str = "closed-form"

    def to_dict(self) -> dict:
        return {"g": self.g, "n": self.n, "a": self.a, "kind": self.kind.value}


def validate_invariants(g: int, n: int, a: int) -> bool:
    """Whether ``(n, a)`` is realised by some orientation-reversing involution in genus ``g``."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if a not in (0, 1) or not 0 <= n <= g + 1:
        return False
    if n == 0 and a != 1:
        return False
    if n == g + 1 and a != 0:
        return False
    if a == 0 and (n - (g + 1)) % 2:
        return False
    return True


def admissible_pairs(g: int) -> list:
    return [(n, a) for n in range(g + 2) for a in (0, 1) if validate_invariants(g, n, a)]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)

    def n_classes(self) -> int:
        return len({self.find(x) for x in self.parent})


def fixed_locus_topology(curve: HyperellipticCurve, kind: InvolutionKind) -> tuple:
    """Compute ``(n, a)`` directly from the branch-cut picture.

    The complement of the real projective line is the union of the upper and
    lower half planes. Each half plane lifts to one connected piece when it
    contains a branch point and to two sheets otherwise. Pieces are glued
    across the real arcs that are *not* fixed by the involution; over an arc
    where ``p > 0`` the sheet ``+sqrt(p)`` from above meets ``+sqrt(p)`` from
    below, and where ``p < 0`` it meets ``-sqrt(p)``.
    """
    kind = InvolutionKind.parse(kind)
    if kind.is_antipodal:
        return 0, 1
    target = kind.fixed_sign
    arcs = curve.profile
    fixed = [arc for arc in arcs if arc.sign == target]
    free = [arc for arc in arcs if arc.sign != target]

    if curve.roots.n_real == 0:
        if not fixed:
            return 0, 1
        # w is a section of O(g+1): continuing +sqrt(p) once around RP^1
        # returns to the sheet (-1)**(g+1)
        n = 1 if (curve.g + 1) % 2 else 2
    else:
        n = len(fixed)
    if n == 0:
        return 0, 1

    if curve.roots.complex_pairs:
        pieces = ["U", "L"]
        uf = _UnionFind(pieces)
        for _ in free:
            uf.union("U", "L")
    else:
        pieces = ["U+", "U-", "L+", "L-"]
        uf = _UnionFind(pieces)
        for arc in free:
            if arc.sign > 0:
                uf.union("U+", "L+")
                uf.union("U-", "L-")
            else:
                uf.union("U+", "L-")
                uf.union("U-", "L+")
    a = 0 if uf.n_classes() > 1 else 1
    return n, a


def classify_hyperelliptic(curve: HyperellipticCurve, kind) -> KleinInvariants:
    """Klein invariants of one of the four involutions of a real hyperelliptic curve.

    Uses the closed-form table in ``k`` (half the number of real branch
    points). The only entry the table leaves open, ``a`` for ``ConjF`` with
    ``k = 0`` in odd genus, is read off :func:`fixed_locus_topology`.
    A negative leading coefficient is handled by ``w -> i w``, which swaps
    ``ConjF`` and ``ConjSigmaF``.
    """
    kind = InvolutionKind.parse(kind)
    g, k = curve.g, curve.k
    if kind.is_antipodal:
        if g % 2 == 0:
            raise NoSuchInvolution("no anti-holomorphic involution covers the antipodal map in even genus")
        if not roots_closed_under_antipode(curve):
            raise NoSuchInvolution("branch points are not closed under the antipodal map")
        return KleinInvariants(g, 0, 1, kind)

    effective = kind if curve.p.leading > 0 else kind.swapped()
    if k == g + 1:
        return KleinInvariants(g, g + 1, 0, kind)
    if effective is InvolutionKind.CONJ_SIGMA_F or k > 0:
        return KleinInvariants(g, k, 1, kind)
    # ConjF (effective) with no real branch points
    if g % 2 == 0:
        return KleinInvariants(g, 1, 0, kind)
    n, a = fixed_locus_topology(curve, kind)
    return KleinInvariants(g, 2, a, kind, method="closed-form n; a from branch-cut connectivity")
