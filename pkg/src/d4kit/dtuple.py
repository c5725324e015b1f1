"""D(n)-tuples of polynomials in Z[i][X] and their regular extensions."""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .gint import GaussianInt, as_gint, format_gint, parse_gint
from .gpoly import GPoly, as_poly, poly_div_exact, poly_sqrt, sort_key

__all__ = [
    "DTupleError",
    "NotATuple",
    "NotAPair",
    "NotATriple",
    "DuplicateElement",
    "ZeroElement",
    "DegenerateInput",
    "NotADMinus4Triple",
    "NonRealInput",
    "TwoConstants",
    "DTuple",
    "TripleWitnesses",
    "TripleExtension",
    "verify_dtuple",
    "extend_pair_regular",
    "extend_triple_regular",
    "fourth_witnesses",
    "is_regular_quadruple",
    "regular_splits",
    "pair_family",
    "lift_dminus4",
    "LiftResult",
    "CorollaryExtension",
]

FOUR = GaussianInt(4, 0)


class DTupleError(ValueError):
    pass


class NotATuple(DTupleError):
    def __init__(self, i: int, j: int, message: str = "") -> None:
        self.i, self.j = i, j
        super().__init__(message or f"product of elements {i} and {j} plus n is not a square")


class NotAPair(DTupleError):
    pass


class NotATriple(DTupleError):
    pass


class DuplicateElement(DTupleError):
    pass


class ZeroElement(DTupleError):
    pass


class DegenerateInput(DTupleError):
    pass


class NotADMinus4Triple(DTupleError):
    pass


class NonRealInput(DTupleError):
    pass


class TwoConstants(UserWarning):
    """More than one constant element alongside a non-constant one."""


@dataclass(frozen=True)
class DTuple:
    """A verified D(n)-tuple; ``witnesses[(i, j)]**2 == elements[i]*elements[j] + n``."""

    n: GaussianInt
    elements: tuple[GPoly, ...]
    witnesses: Mapping[tuple[int, int], GPoly] = field(hash=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def witness(self, i: int, j: int) -> GPoly:
        return self.witnesses[(i, j) if i < j else (j, i)]

    def degrees(self) -> tuple:
        return tuple(e.deg for e in self.elements)

    def to_json(self) -> dict:
        return {
            "n": [str(self.n.re), str(self.n.im)],
            "elements": [e.to_json() for e in self.elements],
            "witnesses": {f"{i},{j}": w.to_json() for (i, j), w in sorted(self.witnesses.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, doc: Mapping, verify: bool = True) -> DTuple:
        n = GaussianInt(int(doc["n"][0]), int(doc["n"][1]))
        elements = [GPoly.from_json(e) for e in doc["elements"]]
        if verify:
            return verify_dtuple(elements, n)
        wit = {}
        for key, w in doc.get("witnesses", {}).items():
            i, j = (int(x) for x in key.split(","))
            wit[(i, j)] = GPoly.from_json(w)
        return cls(n, tuple(elements), wit)

    def describe(self) -> str:
        lines = [f"D({format_gint(self.n)})-tuple of size {len(self.elements)}"]
        for k, e in enumerate(self.elements):
            lines.append(f"  e{k} = {e}")
        for (i, j), w in sorted(self.witnesses.items()):
            lines.append(f"  w{i}{j} = {w}")
        return "\n".join(lines)


class TripleWitnesses(NamedTuple):
    r: GPoly
    s: GPoly
    t: GPoly


class TripleExtension(NamedTuple):
    d_plus: GPoly
    d_minus: GPoly
    witnesses: TripleWitnesses
    plus_sign: int  # d_plus = a+b+c+(abc + plus_sign*rst)/2


def _sqrt_or_raise(p: GPoly, exc: Exception) -> GPoly:
    root = poly_sqrt(p)
    if root is None:
        raise exc
    return root


def verify_dtuple(elements: Iterable, n=4) -> DTuple:
    """Check that ``elements`` form a D(n)-tuple and return it with canonical witnesses.

    Elements are sorted by :func:`~d4kit.gpoly.sort_key`; error indices refer to
    the sorted order.
    """
    n = as_gint(n)
    elems = sorted((as_poly(e) for e in elements), key=sort_key)
    if not elems:
        raise DTupleError("empty tuple")
    if any(not e for e in elems):
        raise ZeroElement("tuple contains the zero polynomial")
    for x, y in zip(elems, elems[1:]):
        if x == y:
            raise DuplicateElement(f"element {x} occurs twice")
    constants = sum(1 for e in elems if e.is_constant())
    if 1 < constants < len(elems):
        warnings.warn(
            f"{constants} constant elements next to non-constant ones",
            TwoConstants,
            stacklevel=2,
        )
    wit = {}
    for i, j in combinations(range(len(elems)), 2):
        root = poly_sqrt(elems[i] * elems[j] + n)
        if root is None:
            raise NotATuple(i, j, f"{elems[i]} * {elems[j]} + {format_gint(n)} is not a square")
        wit[(i, j)] = root
    return DTuple(n, tuple(elems), wit)


def extend_pair_regular(a, b) -> tuple[GPoly, GPoly, GPoly]:
    """Regular extensions ``c = a + b ± 2r`` of a D(4)-pair; returns ``(c_plus, c_minus, r)``."""
    a, b = as_poly(a), as_poly(b)
    r = _sqrt_or_raise(a * b + 4, NotAPair(f"{a} * {b} + 4 is not a square"))
    base = a + b
    return base + r * 2, base - r * 2, r


def triple_witnesses(a, b, c) -> TripleWitnesses:
    a, b, c = as_poly(a), as_poly(b), as_poly(c)
    err = NotATriple(f"{{{a}, {b}, {c}}} is not a D(4)-triple")
    return TripleWitnesses(
        _sqrt_or_raise(a * b + 4, err),
        _sqrt_or_raise(a * c + 4, err),
        _sqrt_or_raise(b * c + 4, err),
    )


def _half(p: GPoly) -> GPoly:
    h = poly_div_exact(p, GPoly((2,)))
    if h is None:
        raise ArithmeticError(f"{p} is not divisible by 2")
    return h


def extend_triple_regular(a, b, c) -> TripleExtension:
    """The two regular fourth elements ``a+b+c+(abc ± rst)/2`` of a D(4)-triple.

    ``d_plus`` is the one of larger degree; equal degrees (only possible for
    constant-heavy triples) are ordered by :func:`sort_key`.
    """
    a, b, c = as_poly(a), as_poly(b), as_poly(c)
    wit = triple_witnesses(a, b, c)
    abc = a * b * c
    rst = wit.r * wit.s * wit.t
    base = a + b + c
    d_p = base + _half(abc + rst)
    d_m = base + _half(abc - rst)
    if sort_key(d_p) >= sort_key(d_m):
        return TripleExtension(d_p, d_m, wit, 1)
    return TripleExtension(d_m, d_p, wit, -1)


def fourth_witnesses(a, b, c, wit: TripleWitnesses, sign: int) -> tuple[GPoly, GPoly, GPoly]:
    """``(u, v, w)`` with ``ad+4 = u^2``, ``bd+4 = v^2``, ``cd+4 = w^2`` for ``d = d_sign``."""
    a, b, c = as_poly(a), as_poly(b), as_poly(c)
    r, s, t = wit
    u = _half(r * s + a * t * sign)
    v = _half(r * t + b * s * sign)
    w = _half(s * t + c * r * sign)
    return u, v, w


def _check_quadruple_inputs(polys: Sequence[GPoly]) -> list[GPoly]:
    if any(not p for p in polys):
        raise ZeroElement("quadruple contains the zero polynomial")
    ordered = sorted(polys, key=sort_key)
    for x, y in zip(ordered, ordered[1:]):
        if x == y:
            raise DuplicateElement(f"element {x} occurs twice")
    return ordered


def _regular_split(a: GPoly, b: GPoly, c: GPoly, d: GPoly) -> bool:
    lhs = a + b - c - d
    return lhs * lhs == (a * b + 4) * (c * d + 4)


def regular_splits(a, b, c, d) -> int:
    """Bitmask over the three splits of the sorted quadruple ``(p0,p1,p2,p3)``.

    bit 0: {p0,p1}|{p2,p3};  bit 1: {p0,p2}|{p1,p3};  bit 2: {p0,p3}|{p1,p2}.
    """
    p = _check_quadruple_inputs([as_poly(x) for x in (a, b, c, d)])
    mask = 0
    for bit, (i, j, k, l) in enumerate(((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))):
        if _regular_split(p[i], p[j], p[k], p[l]):
            mask |= 1 << bit
    return mask


def is_regular_quadruple(a, b, c, d) -> bool:
    """``(a+b-c-d)^2 == (ab+4)(cd+4)`` for the canonically sorted quadruple."""
    p = _check_quadruple_inputs([as_poly(x) for x in (a, b, c, d)])
    return _regular_split(*p)


def pair_family(p, q) -> tuple[GPoly, GPoly]:
    """The D(4)-pair ``(p, p*q^2 + 4q)``, whose witness is ``p*q + 2``."""
    p, q = as_poly(p), as_poly(q)
    b = p * q * q + q * 4
    if not p:
        raise DegenerateInput("p must be nonzero")
    if not b:
        raise DegenerateInput("p*q^2 + 4q vanishes")
    if p == b:
        raise DegenerateInput("p equals p*q^2 + 4q")
    return p, b


class CorollaryExtension(NamedTuple):
    sign: int
    d: GPoly
    status: str  # "quadruple" | "degenerate" | "not_square"
    witnesses: Optional[tuple[GPoly, GPoly, GPoly]]


class LiftResult(NamedTuple):
    lifted: DTuple
    witnesses: TripleWitnesses  # r', s', t' over Z[X]
    extensions: tuple[CorollaryExtension, ...]


def _real_sqrt(p: GPoly) -> Optional[GPoly]:
    root = poly_sqrt(p)
    if root is None or not root.is_real():
        return None
    return root


def lift_dminus4(a, b, c) -> LiftResult:
    """Lift a D(-4)-triple over Z[X] to the D(4)-triple ``{ai, bi, ci}`` and
    evaluate both fourth elements ``-(a+b+c) + (abc ± r's't')/2``.
    """
    a, b, c = as_poly(a), as_poly(b), as_poly(c)
    if not (a.is_real() and b.is_real() and c.is_real()):
        raise NonRealInput("D(-4;4) lifting needs coefficients in Z")
    roots = [_real_sqrt(x * y - 4) for x, y in ((a, b), (a, c), (b, c))]
    if any(rt is None for rt in roots):
        raise NotADMinus4Triple(f"{{{a}, {b}, {c}}} is not a D(-4)-triple over Z[X]")
    r1, s1, t1 = roots
    lifted = verify_dtuple([a.times_i(), b.times_i(), c.times_i()], 4)
    exts = []
    for sign in (1, -1):
        d = -(a + b + c) + _half(a * b * c + r1 * s1 * t1 * sign)
        if not d or d in (a, b, c):
            exts.append(CorollaryExtension(sign, d, "degenerate", None))
            continue
        wits = tuple(_real_sqrt(x * d + 4) for x in (a, b, c))
        if any(w is None for w in wits):
            exts.append(CorollaryExtension(sign, d, "not_square", None))
        else:
            exts.append(CorollaryExtension(sign, d, "quadruple", wits))
    return LiftResult(lifted, TripleWitnesses(r1, s1, t1), tuple(exts))


def parse_n(text: str) -> GaussianInt:
    return parse_gint(text)
