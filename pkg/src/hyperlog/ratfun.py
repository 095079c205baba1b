"""Exact arithmetic in Q(i)(z) restricted to a fixed pole set.

Elements are kept in a closed normal form: a polynomial part in z plus
principal parts (z - a_i)^(-k) at the configured poles.  In this form
residues are direct reads and primitives are term-by-term, so the whole
"is g a derivative?" question reduces to checking simple-pole residues.
"""

from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction


class PoleSetMismatchError(ValueError):
    """Arithmetic between functions declared over different pole sets."""


class PoleEvaluationError(ZeroDivisionError):
    """Evaluation at (or within rounding distance of) a pole."""


class ResidueObstruction(ArithmeticError):
    """The primitive would need logarithms: simple-pole residues survive."""

    def __init__(self, pole_indices):
        self.pole_indices = tuple(pole_indices)
        super().__init__(
            "no rational primitive: nonzero residue at pole index "
            + ", ".join(str(i) for i in self.pole_indices)
        )


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction, str)):
            return GaussianRational(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to a Gaussian rational")

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return not self.is_zero

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.abs2()
        if not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = GR_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        return format_gaussian(self)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))
GR_I = GaussianRational(Fraction(0), Fraction(1))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x))
    return NotImplemented


def format_gaussian(q: GaussianRational) -> str:
    """Canonical text form: `p/q`, `r/s*i`, or `p/q+r/s*i` (also `i`, `-i`)."""
    q = GaussianRational.of(q)
    if q.is_zero:
        return "0"
    if not q.im:
        return str(q.re)
    if q.im == 1:
        imag = "i"
    elif q.im == -1:
        imag = "-i"
    else:
        imag = f"{q.im}*i"
    if not q.re:
        return imag
    sign = "+" if q.im > 0 else "-"
    mag = abs(q.im)
    tail = "i" if mag == 1 else f"{mag}*i"
    return f"{q.re}{sign}{tail}"


_TERM_RE = re.compile(r"[+-]?[^+-]+")


def parse_gaussian(text: str) -> GaussianRational:
    """Parse the text form produced by :func:`format_gaussian`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian rational")
    terms = _TERM_RE.findall(s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse Gaussian rational {text!r}")
    re_part = Fraction(0)
    im_part = Fraction(0)
    for term in terms:
        if term.endswith("i"):
            body = term[:-1].rstrip("*")
            if body in ("", "+"):
                im_part += 1
            elif body == "-":
                im_part -= 1
            else:
                im_part += Fraction(body)
        else:
            re_part += Fraction(term)
    return GaussianRational(re_part, im_part)


class PoleSet:
    """Ordered, pairwise-distinct singularity locations a_1, ..., a_n."""

    __slots__ = ("points", "approx")

    def __init__(self, points):
        pts = tuple(GaussianRational.of(parse_gaussian(p) if isinstance(p, str) else p)
                    for p in points)
        if len(set(pts)) != len(pts):
            raise ValueError("pole locations must be pairwise distinct")
        self.points = pts
        self.approx = tuple(complex(p) for p in pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, PoleSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return "PoleSet([%s])" % ", ".join(format_gaussian(p) for p in self.points)


class PoleLocalizedRational:
    """Rational function with poles confined to a fixed :class:`PoleSet`.

    ``poly[m]`` is the z^m coefficient of the polynomial part;
    ``principal[(i, k)]`` is the coefficient of (z - a_i)^(-k), k >= 1.
    Zero coefficients are never stored, so ``==`` is structural equality.
    """

    __slots__ = ("pole_set", "poly", "principal")

    def __init__(self, pole_set: PoleSet, poly=(), principal=None):
        coeffs = [GaussianRational.of(c) for c in poly]
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        pp = {}
        for (i, k), c in (principal or {}).items():
            c = GaussianRational.of(c)
            if c.is_zero:
                continue
            if not (0 <= i < len(pole_set)):
                raise ValueError(f"pole index {i} outside pole set")
            if k < 1:
                raise ValueError(f"principal-part order {k} must be >= 1")
            pp[(i, k)] = c
        self.pole_set = pole_set
        self.poly = tuple(coeffs)
        self.principal = pp

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, pole_set):
        return cls(pole_set)

    @classmethod
    def one(cls, pole_set):
        return cls(pole_set, (GR_ONE,))

    @classmethod
    def constant(cls, pole_set, c):
        return cls(pole_set, (GaussianRational.of(c),))

    @classmethod
    def from_poly(cls, pole_set, coeffs):
        return cls(pole_set, coeffs)

    @classmethod
    def pole_term(cls, pole_set, i, k, c):
        return cls(pole_set, (), {(i, k): c})

    @classmethod
    def simple_pole(cls, pole_set, i, weight=GR_ONE):
        """The Fuchsian kernel weight/(z - a_i)."""
        return cls.pole_term(pole_set, i, 1, weight)

    # ----- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.poly and not self.principal

    @property
    def is_constant(self) -> bool:
        return not self.principal and len(self.poly) <= 1

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, PoleLocalizedRational):
            return NotImplemented
        return (
            self.pole_set == other.pole_set
            and self.poly == other.poly
            and self.principal == other.principal
        )

    __hash__ = None

    def _check(self, other):
        if self.pole_set != other.pole_set:
            raise PoleSetMismatchError("operands declared over different pole sets")

    # ----- field operations ----------------------------------------------

    def __neg__(self):
        return PoleLocalizedRational(
            self.pole_set,
            tuple(-c for c in self.poly),
            {ik: -c for ik, c in self.principal.items()},
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = PoleLocalizedRational.constant(self.pole_set, other)
        if not isinstance(other, PoleLocalizedRational):
            return NotImplemented
        self._check(other)
        n = max(len(self.poly), len(other.poly))
        poly = [GR_ZERO] * n
        for m, c in enumerate(self.poly):
            poly[m] = poly[m] + c
        for m, c in enumerate(other.poly):
            poly[m] = poly[m] + c
        pp = dict(self.principal)
        for ik, c in other.principal.items():
            pp[ik] = pp.get(ik, GR_ZERO) + c
        return PoleLocalizedRational(self.pole_set, poly, pp)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = PoleLocalizedRational.constant(self.pole_set, other)
        if not isinstance(other, PoleLocalizedRational):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PoleLocalizedRational":
        c = GaussianRational.of(c)
        return PoleLocalizedRational(
            self.pole_set,
            tuple(c * a for a in self.poly),
            {ik: c * a for ik, a in self.principal.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, PoleLocalizedRational):
            return NotImplemented
        self._check(other)
        return _multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    # ----- calculus -------------------------------------------------------

    def derivative(self) -> "PoleLocalizedRational":
        poly = tuple(m * c for m, c in enumerate(self.poly))[1:] if self.poly else ()
        pp = {(i, k + 1): c * (-k) for (i, k), c in self.principal.items()}
        return PoleLocalizedRational(self.pole_set, poly, pp)

    def residue(self, i: int) -> GaussianRational:
        """Coefficient of (z - a_i)^(-1)."""
        if not (0 <= i < len(self.pole_set)):
            raise ValueError(f"pole index {i} outside pole set")
        return self.principal.get((i, 1), GR_ZERO)

    def rational_primitive(self) -> "PoleLocalizedRational":
        """Primitive with zero constant term; raises ResidueObstruction
        when any simple-pole residue is nonzero (log obstruction)."""
        bad = sorted(i for (i, k) in self.principal if k == 1)
        if bad:
            raise ResidueObstruction(bad)
        poly = (GR_ZERO,) + tuple(c / (m + 1) for m, c in enumerate(self.poly))
        pp = {(i, k - 1): c / (-(k - 1)) for (i, k), c in self.principal.items()}
        return PoleLocalizedRational(self.pole_set, poly, pp)

    # ----- evaluation ------------------------------------------------------

    def evaluate(self, z: complex) -> complex:
        """Floating evaluation; rejects points at (or within rounding
        distance of) a pole actually carrying a principal part."""
        z = complex(z)
        eps = 8 * sys.float_info.epsilon
        val = 0j
        for c in reversed(self.poly):
            val = val * z + complex(c)
        for (i, k), c in self.principal.items():
            a = self.pole_set.approx[i]
            if abs(z - a) <= eps * max(1.0, abs(z), abs(a)):
                raise PoleEvaluationError(f"evaluation at pole {a}")
            val += complex(c) / (z - a) ** k
        return val

    def evaluate_exact(self, z) -> GaussianRational:
        z = GaussianRational.of(z)
        val = GR_ZERO
        for c in reversed(self.poly):
            val = val * z + c
        for (i, k), c in self.principal.items():
            if z == self.pole_set[i]:
                raise PoleEvaluationError(f"evaluation at pole {z}")
            val = val + c / (z - self.pole_set[i]) ** k
        return val

    def __str__(self):
        return format_plr(self)

    def __repr__(self):
        return f"<PoleLocalizedRational {format_plr(self)}>"


# ----- product in normal form ------------------------------------------------


def _divide_linear(coeffs, a):
    """p(z) = (z - a) q(z) + r; returns (q coefficients, r)."""
    if not coeffs:
        return [], GR_ZERO
    q = [GR_ZERO] * (len(coeffs) - 1)
    acc = coeffs[-1]
    for m in range(len(coeffs) - 2, -1, -1):
        q[m] = acc
        acc = coeffs[m] + a * acc
    return q, acc


def _taylor_coeffs(coeffs, a):
    """Coefficients b with p(z) = sum_m b_m (z - a)^m."""
    out = []
    work = list(coeffs)
    while work:
        work, r = _divide_linear(work, a)
        out.append(r)
    return out


def _poly_mul_linear(coeffs, a):
    """Coefficient list of (z - a) * p(z)."""
    out = [GR_ZERO] * (len(coeffs) + 1)
    for m, c in enumerate(coeffs):
        out[m + 1] = out[m + 1] + c
        out[m] = out[m] - a * c
    return out


def _shifted_to_plain(shifted, a):
    """Coefficient list in z of sum_m shifted[m] (z - a)^m."""
    out = []
    for c in reversed(shifted):
        out = _poly_mul_linear(out, a)
        if out:
            out[0] = out[0] + c
        else:
            out = [c]
    return out


def _acc_poly(target, coeffs):
    while len(target) < len(coeffs):
        target.append(GR_ZERO)
    for m, c in enumerate(coeffs):
        target[m] = target[m] + c


def _acc_pp(target, key, c):
    target[key] = target.get(key, GR_ZERO) + c


def _multiply(f: PoleLocalizedRational, g: PoleLocalizedRational) -> PoleLocalizedRational:
    ps = f.pole_set
    poly = []
    pp = {}

    if f.poly and g.poly:
        conv = [GR_ZERO] * (len(f.poly) + len(g.poly) - 1)
        for m, a in enumerate(f.poly):
            for n, b in enumerate(g.poly):
                conv[m + n] = conv[m + n] + a * b
        _acc_poly(poly, conv)

    # polynomial x principal part: expand p(z)/(z-a)^k by shifting p to base a
    for p_coeffs, other in ((f.poly, g), (g.poly, f)):
        if not p_coeffs:
            continue
        for (i, k), c in other.principal.items():
            a = ps[i]
            shifted = _taylor_coeffs(p_coeffs, a)
            high = []
            for m, s in enumerate(shifted):
                v = c * s
                if v.is_zero:
                    continue
                if m < k:
                    _acc_pp(pp, (i, k - m), v)
                else:
                    while len(high) < m - k + 1:
                        high.append(GR_ZERO)
                    high[m - k] = high[m - k] + v
            if high:
                _acc_poly(poly, _shifted_to_plain(high, a))

    # principal x principal
    for (i, j), c in f.principal.items():
        for (l, k), d in g.principal.items():
            v = c * d
            if i == l:
                _acc_pp(pp, (i, j + k), v)
                continue
            a, b = ps[i], ps[l]
            ab = a - b
            for p in range(1, j + 1):
                sign = -1 if (j - p) % 2 else 1
                coeff = v * Fraction(sign * math.comb(k + j - p - 1, j - p)) / ab ** (k + j - p)
                _acc_pp(pp, (i, p), coeff)
            ba = b - a
            for q in range(1, k + 1):
                sign = -1 if (k - q) % 2 else 1
                coeff = v * Fraction(sign * math.comb(j + k - q - 1, k - q)) / ba ** (j + k - q)
                _acc_pp(pp, (l, q), coeff)

    return PoleLocalizedRational(ps, poly, pp)


# ----- text forms -------------------------------------------------------------


def format_plr(f: PoleLocalizedRational) -> str:
    """Normal-form text: `poly: [c0, c1, ...]; pp: {(i,k): c, ...}`."""
    parts = []
    if f.poly:
        parts.append("poly: [" + ", ".join(format_gaussian(c) for c in f.poly) + "]")
    if f.principal:
        items = ", ".join(
            f"({i},{k}): {format_gaussian(c)}"
            for (i, k), c in sorted(f.principal.items())
        )
        parts.append("pp: {" + items + "}")
    if not parts:
        return "poly: []"
    return "; ".join(parts)


def _split_top_level(s: str, sep: str):
    depth = 0
    out = []
    cur = []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_plr(text: str, pole_set: PoleSet) -> PoleLocalizedRational:
    """Parse the normal-form text produced by :func:`format_plr`."""
    poly = []
    pp = {}
    for section in text.split(";"):
        section = section.strip()
        if not section:
            continue
        key, _, body = section.partition(":")
        key = key.strip()
        body = body.strip()
        if key == "poly":
            if not (body.startswith("[") and body.endswith("]")):
                raise ValueError(f"bad poly section {section!r}")
            inner = body[1:-1].strip()
            if inner:
                poly = [parse_gaussian(t) for t in _split_top_level(inner, ",")]
        elif key == "pp":
            if not (body.startswith("{") and body.endswith("}")):
                raise ValueError(f"bad pp section {section!r}")
            inner = body[1:-1].strip()
            if not inner:
                continue
            for entry in _split_top_level(inner, ","):
                lhs, _, rhs = entry.partition(":")
                lhs = lhs.strip()
                if not (lhs.startswith("(") and lhs.endswith(")")):
                    raise ValueError(f"bad pp key in {entry!r}")
                i_txt, k_txt = lhs[1:-1].split(",")
                pp[(int(i_txt), int(k_txt))] = parse_gaussian(rhs.strip())
        else:
            raise ValueError(f"unknown section {key!r}")
    return PoleLocalizedRational(pole_set, poly, pp)


def format_plr_pretty(f: PoleLocalizedRational) -> str:
    """Human form, e.g. `-1/z`, `1/2*z^2 - 1/2/(z-1)^2`."""
    if f.is_zero:
        return "0"
    terms = []
    for m, c in enumerate(f.poly):
        if c.is_zero:
            continue
        if m == 0:
            terms.append(format_gaussian(c))
        else:
            zpow = "z" if m == 1 else f"z^{m}"
            if c == 1:
                terms.append(zpow)
            elif c == -1:
                terms.append(f"-{zpow}")
            else:
                terms.append(f"{_wrap(c)}*{zpow}")
    for (i, k), c in sorted(f.principal.items()):
        a = f.pole_set[i]
        if a.is_zero:
            base = "z"
        else:
            txt = format_gaussian(a)
            base = f"(z-{txt})" if not txt.startswith("-") else f"(z+{txt[1:]})"
        if k > 1:
            base = f"{base}^{k}"
        if c == 1:
            terms.append(f"1/{base}")
        elif c == -1:
            terms.append(f"-1/{base}")
        else:
            terms.append(f"{_wrap(c)}/{base}")
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _wrap(c: GaussianRational) -> str:
    txt = format_gaussian(c)
    return f"({txt})" if ("+" in txt[1:] or "-" in txt[1:]) else txt
