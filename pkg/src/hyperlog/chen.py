"""Numeric evaluation of truncated Chen-series coefficients <S|w>, |w| <= N,
along pole-avoiding polylines, for the regular-at-z0 solution of d(S) = MS.

The coefficient family solves the lower-triangular linear system
d<S|x_i w>/dz = u_i(z) <S|w> with <S|1> = 1 and all positive-length
coefficients vanishing at the basepoint.  The whole truncated vector is
stepped at once with an embedded Dormand-Prince 5(4) pair; the embedded
error estimate is accumulated per length stratum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ncalg import Multiplier
from .words import Word, shuffle


class PathGeometryError(ValueError):
    """Endpoints or segments too close to a pole, or no detour found."""


class StepSizeUnderflowError(RuntimeError):
    """Adaptive step shrank below representable size (pole grazing)."""


class TruncationError(ValueError):
    """Invalid truncation order."""


_MAX_DETOUR_DEPTH = 48


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    """Distance from point p to the segment [a, b]."""
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(p - a)
    t = ((p - a).real * d.real + (p - a).imag * d.imag) / L2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


@dataclass(frozen=True)
class PathSpec:
    """Polyline from waypoints[0] to waypoints[-1] with a pole-clearance
    margin every segment is supposed to respect."""

    waypoints: tuple
    margin: float

    def __post_init__(self):
        wp = tuple(complex(w) for w in self.waypoints)
        object.__setattr__(self, "waypoints", wp)
        if not wp:
            raise PathGeometryError("path needs at least one waypoint")
        if self.margin <= 0:
            raise PathGeometryError("margin must be positive")
        for a, b in zip(wp, wp[1:]):
            if a == b:
                raise PathGeometryError("consecutive waypoints must be distinct")

    @property
    def z0(self) -> complex:
        return self.waypoints[0]

    @property
    def z(self) -> complex:
        return self.waypoints[-1]

    def segments(self):
        return list(zip(self.waypoints, self.waypoints[1:]))

    def length(self) -> float:
        return sum(abs(b - a) for a, b in self.segments())

    def validate_against(self, poles) -> None:
        slack = self.margin * (1.0 - 1e-9)
        for a, b in self.segments():
            for p in poles:
                if _segment_distance(a, b, complex(p)) < slack:
                    raise PathGeometryError(
                        f"segment [{a}, {b}] passes within {self.margin} of pole {p}"
                    )

    def reversed(self) -> "PathSpec":
        return PathSpec(self.waypoints[::-1], self.margin)


def build_path(z0: complex, z: complex, poles, margin: float) -> PathSpec:
    """Straight segment when it clears every pole by ``margin``, otherwise a
    deterministic polyline detouring around offending poles.

    Each violating pole (taken in order of encounter) gets a waypoint at
    perpendicular offset 2*margin from the pole, on the side away from it
    (ties break toward +i times the direction of travel); sub-segments are
    fixed recursively.
    """
    z0, z = complex(z0), complex(z)
    pts = [complex(p) for p in poles]
    if margin <= 0:
        raise PathGeometryError("margin must be positive")
    for p in pts:
        for name, e in (("basepoint", z0), ("endpoint", z)):
            if abs(e - p) <= margin:
                raise PathGeometryError(f"{name} {e} within margin of pole {p}")
    if z0 == z:
        return PathSpec((z0,), margin)
    waypoints = _clear_segment(z0, z, pts, margin, 0)
    path = PathSpec(tuple(waypoints), margin)
    path.validate_against(pts)
    return path


def _clear_segment(a, b, poles, margin, depth):
    hits = []
    d = b - a
    L = abs(d)
    dhat = d / L
    for p in poles:
        dist = _segment_distance(a, b, p)
        if dist < margin:
            t = ((p - a).real * d.real + (p - a).imag * d.imag) / (L * L)
            hits.append((min(1.0, max(0.0, t)), p))
    if not hits:
        return [a, b]
    if depth >= _MAX_DETOUR_DEPTH:
        raise PathGeometryError("no pole-avoiding detour found (margin too large?)")
    hits.sort(key=lambda tp: tp[0])
    t, p = hits[0]
    foot = a + t * d
    cross = (dhat.conjugate() * (p - a)).imag
    side = 1j if cross <= 0 else -1j
    way = foot + 2.0 * margin * side * dhat
    left = _clear_segment(a, way, poles, margin, depth + 1)
    right = _clear_segment(way, b, poles, margin, depth + 1)
    return left[:-1] + right


@dataclass
class CoefficientTable:
    """Values of <S|w> at the path endpoint for all |w| <= truncation."""

    values: dict
    z0: complex
    z: complex
    truncation: int
    error_estimates: dict = field(default_factory=dict)

    def __getitem__(self, w) -> complex:
        return self.values[Word(w)]

    def get(self, w, default=None):
        return self.values.get(Word(w), default)

    def __contains__(self, w):
        return Word(w) in self.values

    def words(self) -> list[Word]:
        return sorted(self.values)


# Dormand-Prince 5(4) tableau; row 7 of A is the 5th-order weight vector.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_DP_E = _DP_B5 - _DP_B4
_EPS = float(np.finfo(float).eps)


class _MultiplierKernel:
    """Flattened numeric view of a multiplier for the integrator hot loop.

    Paths are pre-validated against the pole margin, so evaluation skips
    the per-call pole-proximity guard of PoleLocalizedRational.evaluate.
    """

    def __init__(self, M: Multiplier):
        self.n_letters = len(M.alphabet)
        letters = []
        poles = []
        orders = []
        coefs = []
        self.polys = []
        for letter in M.alphabet:
            u = M.terms[letter.index]
            for (i, k), c in u.principal.items():
                letters.append(letter.index)
                poles.append(M.pole_set.approx[i])
                orders.append(k)
                coefs.append(complex(c))
            self.polys.append(
                np.array([complex(c) for c in u.poly], dtype=complex)
                if u.poly
                else None
            )
        self.term_letter = np.array(letters, dtype=np.intp)
        self.term_pole = np.array(poles, dtype=complex)
        self.term_order = np.array(orders, dtype=np.float64)
        self.term_coef = np.array(coefs, dtype=complex)
        self.any_poly = any(p is not None for p in self.polys)

    def values_at(self, zc: complex) -> np.ndarray:
        out = np.zeros(self.n_letters, dtype=complex)
        if len(self.term_letter):
            contrib = self.term_coef * (zc - self.term_pole) ** (-self.term_order)
            np.add.at(out, self.term_letter, contrib)
        if self.any_poly:
            for i, p in enumerate(self.polys):
                if p is not None:
                    acc = 0j
                    for c in p[::-1]:
                        acc = acc * zc + c
                    out[i] += acc
        return out


def eval_coeffs(
    M: Multiplier,
    path: PathSpec,
    N: int,
    tol: float,
    degree_cap=None,
) -> CoefficientTable:
    """Integrate the truncated coefficient system along the path.

    ``tol`` is the absolute error target per coefficient over the whole
    path (error-per-unit-step control on the embedded pair).  The optional
    ``degree_cap`` restricts words to a multidegree box.
    """
    if not isinstance(N, int) or N < 0:
        raise TruncationError(f"truncation must be a nonnegative integer, got {N!r}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    path.validate_against(M.pole_set.approx)

    word_list = M.alphabet.words_up_to(N, degree_cap)
    index = {w: j for j, w in enumerate(word_list)}
    # graded lex ascending: index 0 is the empty word, strata are contiguous
    first = np.array([w[0] for w in word_list[1:]], dtype=np.intp)
    tail = np.array([index[Word(w[1:])] for w in word_list[1:]], dtype=np.intp)
    bounds = []
    for ln in range(N + 1):
        js = [j for j, w in enumerate(word_list) if len(w) == ln]
        bounds.append((js[0], js[-1] + 1) if js else (0, 0))
    kernel = _MultiplierKernel(M)

    y = np.zeros(len(word_list), dtype=complex)
    y[0] = 1.0
    est = np.zeros(N + 1)
    total_len = path.length()

    for a, b in path.segments():
        seg = b - a
        L = abs(seg)
        dhat = seg / L

        def rhs(t, yv, out):
            u_vals = kernel.values_at(a + dhat * t)
            out[0] = 0.0
            np.multiply(u_vals[first], yv[tail], out=out[1:])
            out[1:] *= dhat

        y = _integrate_segment(rhs, L, y, tol, total_len, est, bounds)

    values = {w: complex(y[j]) for w, j in index.items()}
    values[Word()] = 1.0 + 0.0j
    return CoefficientTable(
        values=values,
        z0=path.z0,
        z=path.z,
        truncation=N,
        error_estimates={ln: float(est[ln]) for ln in range(N + 1)},
    )


def _integrate_segment(rhs, L, y, tol, total_len, est, bounds):
    n = len(y)
    t = 0.0
    h = L / 8.0
    h_floor = max(L * 1e-14, 1e-280)
    K = np.empty((7, n), dtype=complex)
    ys = np.empty(n, dtype=complex)
    while t < L:
        last = h >= L - t
        if last:
            h = L - t
        rhs(t, y, K[0])
        for s in range(1, 7):
            np.dot(_DP_A[s], K[:s], out=ys)
            ys *= h
            ys += y
            rhs(t + _DP_C[s] * h, ys, K[s])
        err_vec = h * np.abs(_DP_E @ K)
        err = float(err_vec.max())
        kmax = float(np.abs(K).max())
        # the embedded estimate cannot resolve below the roundoff of the
        # increment itself; never reject on pure noise
        tol_h = max(tol * h / total_len, 32.0 * _EPS * h * kmax)
        if err <= tol_h or h <= h_floor:
            if err > tol_h:
                raise StepSizeUnderflowError(
                    f"step size underflow at arclength {t:.3g} (error {err:.3g})"
                )
            y = y + h * (_DP_B5 @ K)
            for ln, (lo, hi) in enumerate(bounds):
                if hi > lo:
                    est[ln] += err_vec[lo:hi].max()
            t = L if last else t + h
        factor = 0.9 * (tol_h / err) ** 0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if h < h_floor:
            h = h_floor
    return y


def grouplike_report(T: CoefficientTable):
    """(max defect, worst pair) over pairs 1 <= |u|,|v|, |u|+|v| <= N of
    |<S|u><S|v> - <S|u shuffle v>|; (0.0, None) when no pair qualifies."""
    N = T.truncation
    words_pos = [w for w in T.words() if 1 <= len(w)]
    worst = 0.0
    worst_pair = None
    for u in words_pos:
        for v in words_pos:
            if len(u) + len(v) > N:
                continue
            lhs = T[u] * T[v]
            rhs = sum(n * T[w] for w, n in shuffle(u, v).items())
            defect = abs(lhs - rhs)
            if defect > worst:
                worst = defect
                worst_pair = (u, v)
    return worst, worst_pair


def grouplike_defect(T: CoefficientTable) -> float:
    return grouplike_report(T)[0]
