"""Floating-point oracle for the fixed circles of the lifted involution.

Everything here is computed numerically and independently of the exact sign
analysis in :mod:`realhitchin.spectral`.

The real projective line is parametrised by ``x(phi) = (cos phi, sin phi)``,
``phi`` in ``[0, pi)``. In homogeneous form ``w`` is a section of ``O(g+1)``
with ``w**2 = p_h(x)``, and ``q = s * P_h(x) (x0 dx1 - x1 dx0)**2 / w**2``.
Along the path ``x0 dx1 - x1 dx0 = dphi``, so in the real frame ``dphi``
the coefficient of ``q`` is ``s * P_h / p_h``.

A fixed circle of the base involution over an arc ``[phi_a, phi_b]`` is
parametrised smoothly through its two branch points by
``phi(t) = m + h cos t``; in the frame ``dt`` the coefficient becomes
``s * P_h(phi(t)) * (h sin t)**2 / p_h(phi(t))``, finite and nonzero at the
branch points ``t = 0, pi``. Fixed points of the lift are the points where
``eta = sqrt(q)`` is real, and circles are counted by continuing the two real
branches ``+-sqrt(q_t)`` sample to sample and gluing them where ``q_t``
crosses zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .curve import InvolutionKind
from .errors import SampleDegeneracy
from .realpoly import Infinity

__all__ = [
    "OvalPath",
    "LoopTrace",
    "track_fixed_circles",
    "count_nS_oracle",
    "oracle_traces",
    "numeric_fixed_arcs",
]

MIN_SAMPLES = 64
ZERO_TOL = 1e-9
RETRY_BUDGET = 5


@dataclass
class _Model:
    """Float data for ``q`` after reducing ``ConjSigmaF`` on ``p`` to ``ConjF`` on ``-p``."""

    coeffs: np.ndarray  # p_eff, low degree first
    zeros: list  # finite zeros of P as complex
    n_inf: int
    sign: int
    g: int

    def p_h(self, phi):
        c, s = np.cos(phi), np.sin(phi)
        d = len(self.coeffs) - 1
        out = np.zeros_like(phi, dtype=float)
        for i, coef in enumerate(self.coeffs):
            out = out + coef * s**i * c ** (d - i)
        return out

    def P_h(self, phi):
        c, s = np.cos(phi), np.sin(phi)
        out = np.ones_like(phi, dtype=complex)
        for a in self.zeros:
            out = out * (s - a * c)
        return out.real * c**self.n_inf

    def q_phi(self, phi):
        return self.sign * self.P_h(phi) / self.p_h(phi)


def _model(q) -> _Model:
    target = q.kind.fixed_sign
    coeffs = np.array([float(c) for c in q.curve.p.coeffs]) * target
    zeros = [complex(a) for a in q.zeros if not isinstance(a, Infinity)]
    return _Model(coeffs, zeros, q.n_infinite, q.sign * target, q.curve.g)


@dataclass
class OvalPath:
    """A closed loop on the curve covering one fixed circle, with its sample grid.

    ``kind`` is ``"arc"`` (a circle through two branch points, parameter
    ``t`` in ``[0, 2 pi)``) or ``"line"`` (the whole real line without branch
    points, parameter ``phi`` over one or two turns).
    """

    kind: str
    phi_lo: float
    phi_hi: float
    length: float
    boundaries: list = field(default_factory=list)
    samples: Optional[np.ndarray] = None
    label: str = ""

    def phi(self, t):
        if self.kind == "arc":
            m = 0.5 * (self.phi_lo + self.phi_hi)
            h = 0.5 * (self.phi_hi - self.phi_lo)
            return m + h * np.cos(t)
        return self.phi_lo + t

    def q_t(self, model: _Model, t):
        phi = self.phi(t)
        if self.kind == "arc":
            h = 0.5 * (self.phi_hi - self.phi_lo)
            return model.sign * model.P_h(phi) * (h * np.sin(t)) ** 2 / model.p_h(phi)
        return model.q_phi(phi)

    def numerator_t(self, model: _Model, t):
        return model.P_h(self.phi(t))


@dataclass
class LoopTrace:
    label: str
    segments: list
    glue_points: list
    circles: int
    samples_per_segment: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "segments": self.segments,
            "glue_points": self.glue_points,
            "circles": self.circles,
            "samples_per_segment": self.samples_per_segment,
        }


# ---------------------------------------------------------------------------
# discovering the fixed arcs


def _branch_angles(model: _Model) -> list:
    """Angles in [0, pi) where p_h vanishes.

    Candidates come from the companion-matrix roots of ``p``; a candidate
    counts only if ``p_h`` changes sign across it, so nearly real complex
    pairs are dropped while close real pairs are kept.
    """
    cands = np.roots(model.coeffs[::-1])
    f = lambda x: float(model.p_h(np.array([x]))[0])  # noqa: E731
    found = []
    for z in cands:
        if abs(z.imag) > 1e-6 * (1 + abs(z)):
            continue
        phi = np.arctan(z.real) % np.pi
        for width in (1e-10, 1e-8, 1e-6):
            lo, hi = phi - width, phi + width
            if f(lo) * f(hi) < 0:
                found.append(brentq(f, lo, hi, xtol=1e-15) % np.pi)
                break
    found.sort()
    out = []
    for r in found:
        if not out or r - out[-1] > 1e-13:
            out.append(r)
    return out


def numeric_fixed_arcs(q) -> list:
    """Closed loops over the fixed circles, found from sampled signs of ``p``."""
    if q.kind.is_antipodal:
        return []
    model = _model(q)
    return _paths(model)


def _paths(model: _Model) -> list:
    angles = _branch_angles(model)
    if not angles:
        mid = np.array([np.pi / 2])
        if model.p_h(mid)[0] <= 0:
            return []
        # w = +sqrt(p_h) continued over phi in [0, pi] lands on x(pi) = -x(0);
        # as a section of O(g+1) it equals (-1)**(g+1) times the start value
        closes = (-1) ** (model.g + 1) == 1
        if closes:
            return [
                OvalPath("line", 0.0, np.pi, np.pi, label="RP1 sheet +"),
                OvalPath("line", 0.0, np.pi, np.pi, label="RP1 sheet -"),
            ]
        return [OvalPath("line", 0.0, np.pi, 2 * np.pi, label="RP1 (double)")]
    out = []
    m = len(angles)
    for i in range(m):
        lo = angles[i]
        hi = angles[i + 1] if i + 1 < m else angles[0] + np.pi
        if model.p_h(np.array([0.5 * (lo + hi)]))[0] > 0:
            out.append(OvalPath("arc", lo, hi, 2 * np.pi, label=_arc_label(lo, hi)))
    return out


def _arc_label(lo: float, hi: float) -> str:
    def z(phi):
        phi = phi % np.pi
        if abs(phi - np.pi / 2) < 1e-12:
            return "inf"
        return f"{np.tan(phi):.6g}"

    through_inf = lo < np.pi / 2 < hi or lo < 1.5 * np.pi < hi
    if through_inf and abs(hi % np.pi - np.pi / 2) > 1e-12 and abs(lo % np.pi - np.pi / 2) > 1e-12:
        return f"[{z(lo)}, inf, {z(hi)}]"
    return f"[{z(lo)}, {z(hi)}]"


# ---------------------------------------------------------------------------
# counting circles on one loop


def _zero_params(path: OvalPath, model: _Model) -> list:
    """Loop parameters where the numerator of ``q`` vanishes (its real zeros)."""
    phis = [np.arctan(a.real) for a in model.zeros if a.imag == 0]
    if model.n_inf:
        phis.append(np.pi / 2)
    out = []
    for phi in phis:
        if path.kind == "arc":
            m = 0.5 * (path.phi_lo + path.phi_hi)
            h = 0.5 * (path.phi_hi - path.phi_lo)
            for shift in (0.0, np.pi):
                x = (phi + shift - m) / h
                if -1 < x < 1:
                    t = np.arccos(x)
                    out += [t, 2 * np.pi - t]
        else:
            base = (phi - path.phi_lo) % np.pi
            out += [base + k * np.pi for k in range(int(round(path.length / np.pi)))]
    return sorted(out)


def _segment_samples(path: OvalPath, per_segment: int, offset: float) -> np.ndarray:
    cuts = sorted(set([0.0] + list(path.boundaries)))
    if path.kind == "arc":
        cuts = sorted(set(cuts + [np.pi]))
    cuts = cuts + [cuts[0] + path.length]
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        pieces.append(a + (np.arange(per_segment) + offset) * (b - a) / per_segment)
    return np.concatenate(pieces)


def _pattern(values: np.ndarray) -> tuple:
    s = np.sign(values)
    collapsed = [int(s[0])]
    for x in s[1:]:
        if x != collapsed[-1]:
            collapsed.append(int(x))
    # cyclic: merge last run into the first
    if len(collapsed) > 1 and collapsed[-1] == collapsed[0]:
        collapsed.pop()
    return tuple(collapsed)


def _count_components(values: np.ndarray):
    """Continue the real branches of sqrt(values) around the loop and count circles."""
    n = len(values)
    pos = values > 0
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    degree = {}
    for j in np.nonzero(pos)[0]:
        for b in (1, -1):
            parent[(int(j), b)] = (int(j), b)
            degree[(int(j), b)] = 0
    glue = []
    for j in range(n):
        k = (j + 1) % n
        if pos[j] and pos[k]:
            for b in (1, -1):
                union((j, b), (k, b))
                degree[(j, b)] += 1
                degree[(k, b)] += 1
        elif pos[j] != pos[k]:
            side = j if pos[j] else k
            union((side, 1), (side, -1))
            degree[(side, 1)] += 1
            degree[(side, -1)] += 1
            glue.append(j)
    if any(d != 2 for d in degree.values()):
        raise SampleDegeneracy("lifted fixed set is not a union of circles at this resolution")
    return len({find(x) for x in parent}), glue


def _near_zero(t: np.ndarray, zeros, length: float) -> bool:
    """True when some sample sits within ``ZERO_TOL * length`` of a located zero."""
    if not len(zeros):
        return False
    d = np.abs(t[:, None] - np.asarray(zeros)[None, :]) % length
    return bool(np.min(np.minimum(d, length - d)) < ZERO_TOL * length)


def _track(path: OvalPath, model: _Model):
    path.boundaries = _zero_params(path, model)
    per = MIN_SAMPLES
    history = []
    offsets = [0.5, 0.3183, 0.7071, 0.1234, 0.8765]
    attempt = 0
    while True:
        offset = offsets[attempt % len(offsets)]
        t = _segment_samples(path, per, offset)
        v = path.q_t(model, t)
        if (v == 0).any() or _near_zero(t, path.boundaries, path.length):
            attempt += 1
            if attempt >= RETRY_BUDGET:
                raise SampleDegeneracy("sample landed on a zero of q after retries")
            continue
        history.append(_pattern(v))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
        per *= 2
    path.samples = t
    circles, glue = _count_components(v)
    segments = []
    cuts = sorted(set([0.0] + list(path.boundaries) + ([np.pi] if path.kind == "arc" else [])))
    cuts = cuts + [cuts[0] + path.length]
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        segments.append(
            {
                "t0": float(a),
                "t1": float(b),
                "phi0": float(path.phi(np.array([a]))[0]),
                "phi1": float(path.phi(np.array([b]))[0]),
                "phi_mid": float(path.phi(np.array([mid]))[0]),
                "sign": int(np.sign(path.q_t(model, np.array([mid]))[0])),
            }
        )
    trace = LoopTrace(path.label, segments, [float(t[j]) for j in glue], circles, per)
    return circles, trace


# ---------------------------------------------------------------------------
# public entry points


def track_fixed_circles(q, oval) -> int:
    """Number of fixed circles of the lift lying over one fixed circle of ``q``'s curve.

    ``oval`` is a :class:`realhitchin.spectral.Oval`; its endpoints are only
    used as floats to place the loop.
    """
    if q.kind.is_antipodal:
        return 0
    model = _model(q)
    curve = q.curve
    if oval.is_full_circle:
        paths = _paths(model)
        if oval.covering == 1:
            want = "RP1 sheet +" if (oval.sheet or 1) > 0 else "RP1 sheet -"
            paths = [p for p in paths if p.label == want]
        if len(paths) != 1:
            raise SampleDegeneracy("could not match the full-line oval")
        return _track(paths[0], model)[0]
    rr = curve.roots.real_roots
    lo = np.arctan(rr[oval.arc.left].approx) % np.pi
    hi = np.arctan(rr[oval.arc.right].approx) % np.pi
    if hi <= lo:
        hi += np.pi
    path = OvalPath("arc", lo, hi, 2 * np.pi, label=_arc_label(lo, hi))
    return _track(path, model)[0]


def oracle_traces(q) -> list:
    if q.kind.is_antipodal:
        return []
    model = _model(q)
    return [_track(path, model)[1] for path in _paths(model)]


def count_nS_oracle(q) -> int:
    """Total number of fixed circles of the lifted involution on the spectral curve."""
    return sum(t.circles for t in oracle_traces(q))
