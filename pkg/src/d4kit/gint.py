"""Exact Gaussian integers.

A :class:`GaussianInt` is ``re + im*i`` with arbitrary-precision integer parts.
Besides the ring operations the module provides exact division and the exact
square-root decision procedure that every witness computation relies on.
"""
from __future__ import annotations

import re as _re
from math import isqrt
from typing import Optional, Union

__all__ = [
    "GaussianInt",
    "ZERO",
    "ONE",
    "I",
    "as_gint",
    "gi_norm",
    "gi_conj",
    "gi_div_exact",
    "gi_sqrt",
    "is_canonical",
    "canonical_sign",
    "parse_gint",
]

IntLike = Union[int, "GaussianInt"]


class GaussianInt:
    """An element ``re + im*i`` of Z[i].

    Instances are immutable. Equality is componentwise; ``GaussianInt(3, 0) == 3``
    holds so plain integers mix freely with Gaussian ones.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0) -> None:
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    def __reduce__(self):
        return (GaussianInt, (self.re, self.im))

    # -- ring structure ----------------------------------------------------
    def __add__(self, other: IntLike) -> GaussianInt:
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re + other.re, self.im + other.im)
        if isinstance(other, int):
            return GaussianInt(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> GaussianInt:
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re - other.re, self.im - other.im)
        if isinstance(other, int):
            return GaussianInt(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: IntLike) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: IntLike) -> GaussianInt:
        if isinstance(other, GaussianInt):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianInt(a * c - b * d, a * d + b * c)
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __pos__(self) -> GaussianInt:
        return self

    def __pow__(self, k: int) -> GaussianInt:
        if k < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- helpers -------------------------------------------------------------
    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return format_gint(self)


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)


def as_gint(value: IntLike) -> GaussianInt:
    if isinstance(value, GaussianInt):
        return value
    if isinstance(value, int):
        return GaussianInt(value, 0)
    raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")


def gi_norm(z: IntLike) -> int:
    return as_gint(z).norm()


def gi_conj(z: IntLike) -> GaussianInt:
    return as_gint(z).conj()


def gi_div_exact(a: IntLike, b: IntLike) -> Optional[GaussianInt]:
    """Return ``q`` with ``b*q == a`` if it exists in Z[i], else ``None``.

    Raises :class:`ZeroDivisionError` for ``b == 0``; that is a domain error,
    not a divisibility verdict.
    """
    a, b = as_gint(a), as_gint(b)
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    # a * conj(b) / N(b)
    x = a.re * b.re + a.im * b.im
    y = a.im * b.re - a.re * b.im
    if x % n or y % n:
        return None
    return GaussianInt(x // n, y // n)


def is_canonical(z: GaussianInt) -> bool:
    """Canonical among ``{z, -z}``: ``re > 0``, or ``re == 0`` and ``im >= 0``."""
    return z.re > 0 or (z.re == 0 and z.im >= 0)


def canonical_sign(z: GaussianInt) -> GaussianInt:
    return z if is_canonical(z) else -z


def _exact_isqrt(n: int) -> Optional[int]:
    if n < 0:
        return None
    m = isqrt(n)
    return m if m * m == n else None


def gi_sqrt(z: IntLike) -> Optional[GaussianInt]:
    """Canonical square root of ``z`` in Z[i], or ``None`` if ``z`` is not a square.

    Uses the norm decomposition: with ``m = sqrt(N(z))`` the root ``a + bi``
    satisfies ``a^2 = (m + re)/2`` and ``b^2 = (m - re)/2``; the sign of ``b``
    follows from ``2ab = im``.
    """
    z = as_gint(z)
    m = _exact_isqrt(z.norm())
    if m is None:
        return None
    if (m + z.re) & 1:
        return None
    a = _exact_isqrt((m + z.re) // 2)
    b = _exact_isqrt((m - z.re) // 2)
    if a is None or b is None:
        return None
    if a and z.im < 0:
        b = -b
    root = GaussianInt(a, b)
    if root * root != z:
        return None
    return root


_GINT_RE = _re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?\d+)\s*(?:(?P<sign>[+-])\s*(?P<im>\d*)\s*i)?   # a, a+bi, a-bi
      | (?P<pure>[+-]?\d*)\s*i                                    # bi, -i, i
    )\s*$""",
    _re.VERBOSE,
)


def parse_gint(text: str) -> GaussianInt:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (optional leading sign, ``i`` alone allowed)."""
    match = _GINT_RE.match(text)
    if not match:
        raise ValueError(f"not a Gaussian integer: {text!r}")
    if match.group("re") is not None:
        real = int(match.group("re"))
        if match.group("sign") is None:
            return GaussianInt(real, 0)
        mag = int(match.group("im") or 1)
        return GaussianInt(real, mag if match.group("sign") == "+" else -mag)
    pure = match.group("pure")
    if pure in ("", "+"):
        return GaussianInt(0, 1)
    if pure == "-":
        return GaussianInt(0, -1)
    return GaussianInt(0, int(pure))


def format_gint(z: GaussianInt) -> str:
    """Plain text form: ``3``, ``-2i``, ``i``, ``1+1i``, ``1-2i``."""
    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        if z.im == 1:
            return "i"
        if z.im == -1:
            return "-i"
        return f"{z.im}i"
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{abs(z.im)}i"
