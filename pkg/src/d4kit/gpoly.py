"""Dense polynomials over the Gaussian integers, i.e. the ring Z[i][X].

Coefficients are stored in ascending order of powers with no trailing zeros;
the zero polynomial has an empty coefficient tuple and degree ``NEG_INF``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .gint import (
    GaussianInt,
    ZERO,
    as_gint,
    format_gint,
    gi_div_exact,
    gi_sqrt,
    is_canonical,
)

__all__ = [
    "NEG_INF",
    "GPoly",
    "DegreeProfile",
    "X",
    "as_poly",
    "poly_deg",
    "poly_leading",
    "poly_eval",
    "poly_div_exact",
    "poly_divmod_rational",
    "poly_congruent",
    "poly_sqrt",
    "poly_print",
    "canonical_poly",
    "sort_key",
]

NEG_INF = float("-inf")

Coeff = Union[int, GaussianInt]
PolyLike = Union["GPoly", int, GaussianInt]


class GPoly:
    """Element of Z[i][X]. Immutable; supports ``+ - *``, unary minus and ``**``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()) -> None:
        cs = [as_gint(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("GPoly is immutable")

    def __reduce__(self):
        return (GPoly, (self.coeffs,))

    @classmethod
    def _raw(cls, coeffs: tuple) -> GPoly:
        # caller guarantees GaussianInt entries and no trailing zero
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def const(cls, c: Coeff) -> GPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c: Coeff, k: int) -> GPoly:
        return cls([0] * k + [c])

    # -- basic queries ---------------------------------------------------------
    @property
    def deg(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> GaussianInt:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> GaussianInt:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    # -- ring operations -------------------------------------------------------
    def __add__(self, other: PolyLike) -> GPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return GPoly(out)

    __radd__ = __add__

    def __neg__(self) -> GPoly:
        return GPoly._raw(tuple(-c for c in self.coeffs))

    def __pos__(self) -> GPoly:
        return self

    def __sub__(self, other: PolyLike) -> GPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> GPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: PolyLike) -> GPoly:
        if isinstance(other, (int, GaussianInt)):
            return self.scale(other)
        if not isinstance(other, GPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        re = [0] * (len(a) + len(b) - 1)
        im = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            xr, xi = x.re, x.im
            for j, y in enumerate(b):
                yr, yi = y.re, y.im
                re[i + j] += xr * yr - xi * yi
                im[i + j] += xr * yi + xi * yr
        # no zero divisors: the leading product is nonzero
        return GPoly._raw(tuple(GaussianInt(r, m) for r, m in zip(re, im)))

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> GPoly:
        c = as_gint(c)
        if not c:
            return ZERO_POLY
        return GPoly._raw(tuple(x * c for x in self.coeffs))

    def __pow__(self, k: int) -> GPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result, base = ONE_POLY, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, GaussianInt)):
            c = as_gint(other)
            return self.coeffs == ((c,) if c else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- evaluation / conversion ----------------------------------------------
    def __call__(self, x: Coeff) -> GaussianInt:
        return poly_eval(self, x)

    def conj(self) -> GPoly:
        """Coefficientwise complex conjugate."""
        return GPoly._raw(tuple(c.conj() for c in self.coeffs))

    def times_i(self) -> GPoly:
        return self.scale(GaussianInt(0, 1))

    def to_json(self) -> list:
        return [[str(c.re), str(c.im)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> GPoly:
        return cls(GaussianInt(int(re), int(im)) for re, im in data)

    def __repr__(self) -> str:
        return f"GPoly({poly_print(self)!r})"

    def __str__(self) -> str:
        return poly_print(self)


ZERO_POLY = GPoly()
ONE_POLY = GPoly((1,))
X = GPoly((0, 1))


def _coerce(value) -> Optional[GPoly]:
    if isinstance(value, GPoly):
        return value
    if isinstance(value, (int, GaussianInt)):
        return GPoly((value,))
    return None


def as_poly(value: PolyLike) -> GPoly:
    p = _coerce(value)
    if p is None:
        if isinstance(value, str):
            from .polytext import poly_parse

            return poly_parse(value)
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return p


def poly_deg(p: GPoly) -> Union[int, float]:
    return p.deg


def poly_leading(p: GPoly) -> GaussianInt:
    return p.leading


def poly_eval(p: GPoly, x: Coeff) -> GaussianInt:
    x = as_gint(x)
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_div_exact(p: GPoly, q: GPoly) -> Optional[GPoly]:
    """Return ``h`` with ``q*h == p`` when ``h`` lies in Z[i][X], else ``None``.

    Long division from the top. Over Q(i)[X] the quotient is unique, so a
    coefficient that fails to be a Gaussian integer already proves that no
    integral quotient exists; the loop stops there instead of finishing the
    rational division. ``poly_divmod_rational`` is the unabridged route.
    """
    p, q = as_poly(p), as_poly(q)
    if not q.coeffs:
        raise ZeroDivisionError("polynomial division by zero")
    if not p.coeffs:
        return ZERO_POLY
    dq = len(q.coeffs) - 1
    dp = len(p.coeffs) - 1
    if dp < dq:
        return None
    lead = q.coeffs[-1]
    rem = list(p.coeffs)
    quot = [ZERO] * (dp - dq + 1)
    qc = q.coeffs
    for k in range(dp - dq, -1, -1):
        top = rem[k + dq]
        if not top:
            continue
        h = gi_div_exact(top, lead)
        if h is None:
            return None
        quot[k] = h
        for j in range(dq + 1):
            rem[k + j] = rem[k + j] - h * qc[j]
    if any(rem[:dq]):
        return None
    return GPoly(quot)


def poly_divmod_rational(p: GPoly, q: GPoly) -> tuple[list, list]:
    """Division with remainder in Q(i)[X].

    Returns ``(quotient, remainder)`` as ascending lists of ``(Fraction, Fraction)``
    pairs (real, imaginary). The remainder list is trimmed of trailing zeros.
    """
    p, q = as_poly(p), as_poly(q)
    if not q.coeffs:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [(Fraction(c.re), Fraction(c.im)) for c in p.coeffs]
    qc = [(Fraction(c.re), Fraction(c.im)) for c in q.coeffs]
    dq = len(qc) - 1
    lr, li = qc[-1]
    ln = lr * lr + li * li
    if len(rem) - 1 < dq:
        return [], rem
    quot = [(Fraction(0), Fraction(0))] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        tr, ti = rem[k + dq]
        hr = (tr * lr + ti * li) / ln
        hi = (ti * lr - tr * li) / ln
        quot[k] = (hr, hi)
        for j, (cr, ci) in enumerate(qc):
            rr, ri = rem[k + j]
            rem[k + j] = (rr - (hr * cr - hi * ci), ri - (hr * ci + hi * cr))
    rem = rem[:dq]
    while rem and rem[-1] == (0, 0):
        rem.pop()
    return quot, rem


def poly_congruent(p: PolyLike, q: PolyLike, m: PolyLike) -> bool:
    """``p ≡ q (mod m)`` in Z[i][X], i.e. ``m`` divides ``p - q`` exactly."""
    m = as_poly(m)
    if not m:
        raise ZeroDivisionError("congruence modulo the zero polynomial")
    return poly_div_exact(as_poly(p) - as_poly(q), m) is not None


def poly_sqrt(p: PolyLike) -> Optional[GPoly]:
    """Canonical ``h`` with ``h*h == p`` (leading coefficient canonical), or ``None``."""
    p = as_poly(p)
    cs = p.coeffs
    if not cs:
        return ZERO_POLY
    dp = len(cs) - 1
    if dp & 1:
        return None
    n = dp // 2
    top = gi_sqrt(cs[-1])
    if top is None:
        return None
    h = [ZERO] * (n + 1)
    h[n] = top
    two_top = top * 2
    for k in range(n - 1, -1, -1):
        acc = cs[n + k]
        for i in range(k + 1, n):
            acc = acc - h[i] * h[n + k - i]
        hk = gi_div_exact(acc, two_top)
        if hk is None:
            return None
        h[k] = hk
    root = GPoly._raw(tuple(h))
    if root * root != p:
        return None
    return root


def canonical_poly(p: GPoly) -> GPoly:
    """The canonical representative of ``{p, -p}``."""
    if not p or is_canonical(p.leading):
        return p
    return -p


def sort_key(p: GPoly) -> tuple:
    """Total order used for tuple elements: degree, leading-coefficient norm, text."""
    if not p:
        return (NEG_INF, 0, "0")
    return (p.deg, p.leading.norm(), poly_print(p))


@dataclass(frozen=True)
class DegreeProfile:
    alpha: Union[int, float]
    beta: Union[int, float]
    gamma: Union[int, float]
    delta: Optional[Union[int, float]] = None

    @classmethod
    def of(cls, *polys: GPoly) -> DegreeProfile:
        degs = [p.deg for p in polys]
        return cls(*degs)


def _coeff_text(c: GaussianInt, with_var: bool) -> tuple[str, str]:
    """Split a coefficient into (sign, magnitude text) for printing."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        if with_var and mag == 1:
            return sign, ""
        return sign, str(mag)
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{mag}i"
    sign = "-" if c.im < 0 else "+"
    return "+", f"({c.re}{sign}{abs(c.im)}i)"


def poly_print(p: GPoly) -> str:
    """Canonical text: descending powers, ``" + "``/``" - "`` separators, ``"0"`` for zero."""
    if not p.coeffs:
        return "0"
    parts: list[str] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        var = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        sign, mag = _coeff_text(c, bool(var))
        term = mag + var
        if not parts:
            parts.append(("-" if sign == "-" else "") + term)
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts)


# re-exported for callers that format coefficients alongside polynomials
format_coeff = format_gint
