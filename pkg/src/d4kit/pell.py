"""Simultaneous Pellian equations of a D(4)-triple.

For a sorted triple ``{a, b, c}`` with witnesses ``r^2 = ab+4``, ``s^2 = ac+4``,
``t^2 = bc+4`` a fourth element ``d`` gives ``z`` with

* branch 1:  ``a z^2 - c x^2 = 4(a - c)``
* branch 2:  ``b z^2 - c y^2 = 4(b - c)``

Solutions of a branch form chains under ``z' = (q z + c x)/2``,
``x' = (q x + p z)/2`` where ``(p, q) = (a, s)`` or ``(b, t)``. The chain of
``z`` values is the binary recurrence ``v_{m+2} = q v_{m+1} - v_m``.

This module builds the system, descends any solution to its fundamental
representative, generates recurrence runs, intersects them, and checks the
congruence, degree and classification lemmas of the theory on concrete
instances. Checkers never raise on a lemma failure; they return
:class:`LemmaResult` records.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Optional, Sequence, Union

from .dtuple import (
    DTuple,
    NotATriple,
    TripleWitnesses,
    extend_triple_regular,
    fourth_witnesses,
    verify_dtuple,
)
from .gint import GaussianInt
from .gpoly import (
    GPoly,
    DegreeProfile,
    as_poly,
    canonical_poly,
    poly_congruent,
    poly_div_exact,
    poly_print,
    poly_sqrt,
    sort_key,
)

__all__ = [
    "PellError",
    "NotASolution",
    "DescentStuck",
    "HalvingFailed",
    "PellSystem",
    "FundamentalSolution",
    "Descent",
    "RecurrenceRun",
    "Intersection",
    "LemmaResult",
    "TripleAnalysis",
    "LEMMA_IDS",
    "REGISTRY",
    "MAX_DESCENT_STEPS",
    "build_system",
    "step",
    "double_step",
    "descend",
    "fundamental_solutions",
    "seed_solution",
    "run_sequence",
    "intersect",
    "analyze",
    "run_checkers",
    "check_parity_congruences",
    "check_modc2_congruences",
    "check_rst_congruence",
    "check_degree_formulas",
    "classify_initials",
    "check_shift_identities",
    "check_alpha0_lemma",
    "check_identity_block",
    "report_to_json",
]

MAX_DESCENT_STEPS = 64
TWO_I = GaussianInt(0, 2)


class PellError(ValueError):
    pass


class NotASolution(PellError):
    pass


class DescentStuck(PellError):
    pass


class HalvingFailed(PellError):
    def __init__(self, index: int, message: str = "") -> None:
        self.index = index
        super().__init__(message or f"halving failed at term {index}")


def _half(p: GPoly) -> Optional[GPoly]:
    out = []
    for c in p.coeffs:
        if c.re & 1 or c.im & 1:
            return None
        out.append(GaussianInt(c.re >> 1, c.im >> 1))
    return GPoly._raw(tuple(out))


def _deg(p: GPoly):
    return p.deg


# --------------------------------------------------------------------------
# system


@dataclass(frozen=True)
class PellSystem:
    a: GPoly
    b: GPoly
    c: GPoly
    wit: TripleWitnesses
    profile: DegreeProfile

    @property
    def r(self) -> GPoly:
        return self.wit.r

    @property
    def s(self) -> GPoly:
        return self.wit.s

    @property
    def t(self) -> GPoly:
        return self.wit.t

    def coefficients(self, branch: int) -> tuple[GPoly, GPoly]:
        """``(p, q)``: ``(a, s)`` for branch 1, ``(b, t)`` for branch 2."""
        if branch == 1:
            return self.a, self.wit.s
        if branch == 2:
            return self.b, self.wit.t
        raise ValueError(f"branch must be 1 or 2, got {branch!r}")

    def residual(self, branch: int, z: GPoly, xy: GPoly) -> GPoly:
        p, _ = self.coefficients(branch)
        return p * z * z - self.c * xy * xy - (p - self.c) * 4

    def is_solution(self, branch: int, z: GPoly, xy: GPoly) -> bool:
        return not self.residual(branch, z, xy)

    def within_bounds(self, branch: int, z: GPoly, xy: GPoly) -> bool:
        """Fundamental degree bounds: ``4deg z <= 3γ - α_p`` and ``4deg xy <= α_p + γ``."""
        pd = self.profile.alpha if branch == 1 else self.profile.beta
        g = self.profile.gamma
        return 4 * _deg(z) <= 3 * g - pd and 4 * _deg(xy) <= pd + g

    def instance_id(self) -> str:
        return "{" + ", ".join(poly_print(p) for p in (self.a, self.b, self.c)) + "}"


def build_system(triple: Union[DTuple, Sequence]) -> PellSystem:
    if isinstance(triple, DTuple):
        if len(triple) != 3 or triple.n != 4:
            raise NotATriple(f"need a D(4)-triple, got {len(triple)} elements")
        elems = list(triple.elements)
    else:
        elems = [as_poly(e) for e in triple]
        if len(elems) != 3:
            raise NotATriple(f"need 3 elements, got {len(elems)}")
    try:
        dt = verify_dtuple(elems, 4)
    except ValueError as exc:
        raise NotATriple(str(exc)) from exc
    a, b, c = dt.elements
    wit = TripleWitnesses(dt.witness(0, 1), dt.witness(0, 2), dt.witness(1, 2))
    return PellSystem(a, b, c, wit, DegreeProfile.of(a, b, c))


# --------------------------------------------------------------------------
# stepping and descent


def step(system: PellSystem, branch: int, z: GPoly, xy: GPoly, direction: int = 1) -> tuple[GPoly, GPoly]:
    """One multiplication by ``(q ± sqrt(pc))/2``; ``direction=-1`` is the inverse step."""
    p, q = system.coefficients(branch)
    nz = _half(q * z + system.c * xy * direction)
    nx = _half(q * xy + p * z * direction)
    if nz is None or nx is None:
        raise HalvingFailed(1, "step left Z[i][X]")
    return nz, nx


def double_step(system: PellSystem, branch: int, z: GPoly, xy: GPoly) -> tuple[GPoly, GPoly]:
    """Multiplication by ``((q + sqrt(pc))/2)^2 = (pc + 2 + q sqrt(pc))/2``."""
    p, q = system.coefficients(branch)
    pc2 = p * system.c + 2
    nz = _half(z * pc2 + xy * system.c * q)
    nx = _half(xy * pc2 + z * p * q)
    if nz is None or nx is None:
        raise HalvingFailed(2, "double step left Z[i][X]")
    return nz, nx


@dataclass(frozen=True)
class FundamentalSolution:
    branch: int
    z: GPoly
    xy: GPoly
    d_seed: GPoly

    def negated_partner(self) -> FundamentalSolution:
        return FundamentalSolution(self.branch, self.z, -self.xy, self.d_seed)

    def key(self) -> tuple:
        return (self.branch, self.z, self.xy)


@dataclass(frozen=True)
class Descent:
    fund: FundamentalSolution
    index: int  # the input equals term ``index`` of the run started at ``fund``

    @property
    def double_steps(self) -> Optional[int]:
        return self.index // 2 if self.index % 2 == 0 else None


def _seed(system: PellSystem, branch: int, z: GPoly, xy: GPoly) -> FundamentalSolution:
    d = poly_div_exact(z * z - 4, system.c)
    if d is None:
        raise NotASolution(f"c does not divide {z}^2 - 4")
    return FundamentalSolution(branch, z, xy, d)


def descend(system: PellSystem, branch: int, z, xy) -> Descent:
    """Walk a solution down its chain until the fundamental degree bounds hold.

    Each inverse step picks whichever of ``(qz ∓ cx)/2`` has lower degree
    (equivalently: inverse step on ``(z, ±x)``). The result is verified by
    regenerating forward; failure to reach the bounds within
    :data:`MAX_DESCENT_STEPS` raises :class:`DescentStuck`.
    """
    z, xy = as_poly(z), as_poly(xy)
    if not system.is_solution(branch, z, xy):
        raise NotASolution(f"({z}, {xy}) does not solve branch {branch}")
    cz, cx = z, xy
    k = 0
    while not system.within_bounds(branch, cz, cx):
        if k >= MAX_DESCENT_STEPS:
            raise DescentStuck(f"no fundamental solution within {MAX_DESCENT_STEPS} steps")
        cands = []
        for sgn in (1, -1):
            try:
                nz, nx = step(system, branch, cz, cx * sgn, -1)
            except HalvingFailed:
                continue
            cands.append((nz, nx))
        if not cands:
            raise DescentStuck(f"inverse step left Z[i][X] at ({cz}, {cx})")
        nz, nx = min(cands, key=lambda zx: (_deg(zx[0]), sort_key(zx[0])))
        if not _deg(nz) < _deg(cz):
            raise DescentStuck(f"inverse step does not lower deg z at ({cz}, {cx})")
        cz, cx = nz, nx
        k += 1
    for sgn in (1, -1):
        fz, fx = cz, cx * sgn
        for _ in range(k):
            fz, fx = step(system, branch, fz, fx)
        if fz == z and (fx == xy or fx == -xy):
            return Descent(_seed(system, branch, cz, cx * sgn), k)
    raise DescentStuck("forward regeneration does not reproduce the input")


def seed_solution(system: PellSystem, branch: int, z) -> list[FundamentalSolution]:
    """Solutions ``(z, ±xy)`` of the branch for a given ``z`` (empty if none)."""
    z = as_poly(z)
    p, _ = system.coefficients(branch)
    d = poly_div_exact(z * z - 4, system.c)
    if d is None:
        return []
    xy = poly_sqrt(p * d + 4)
    if xy is None:
        return []
    out = [FundamentalSolution(branch, z, xy, d)]
    if xy:
        out.append(FundamentalSolution(branch, z, -xy, d))
    return out


def _seed_candidates(system: PellSystem) -> list[GPoly]:
    ext = extend_triple_regular(system.a, system.b, system.c)
    cands = [GPoly(), GPoly((TWO_I,)), GPoly((-TWO_I,)), system.a, system.b, system.c, ext.d_plus, ext.d_minus]
    seen, out = set(), []
    for d in cands:
        if d not in seen:
            seen.add(d)
            out.append(d)
    return out


def _minimize(system: PellSystem, f: FundamentalSolution) -> FundamentalSolution:
    # the bounds can hold for two neighbours on one orbit; keep the lower one
    z, xy = f.z, f.xy
    for _ in range(MAX_DESCENT_STEPS):
        best = None
        for sgn in (1, -1):
            try:
                nz, nx = step(system, f.branch, z, xy * sgn, -1)
            except HalvingFailed:
                continue
            if _deg(nz) < _deg(z) and (best is None or sort_key(nz) < sort_key(best[0])):
                best = (nz, nx)
        if best is None:
            break
        z, xy = best
    if z == f.z:
        return f
    return _seed(system, f.branch, z, xy)


def _normalize(f: FundamentalSolution) -> FundamentalSolution:
    if canonical_poly(f.z) == f.z:
        return f
    return FundamentalSolution(f.branch, -f.z, -f.xy, f.d_seed)


def fundamental_solutions(system: PellSystem, branch: int) -> list[FundamentalSolution]:
    """Fundamental solutions reached from every known extension of the triple.

    Candidate fourth elements are ``0``, ``±2i``, ``a``, ``b``, ``c`` and
    ``d±``; each admissible one yields ``z = sqrt(cd+4)``, which is descended
    and then pushed to the lowest-degree member of its orbit.
    Results are sign-normalized (``z`` canonical) and deduplicated up to the
    sign of ``xy``.
    """
    p, _ = system.coefficients(branch)
    found: dict[tuple, FundamentalSolution] = {}
    for d in _seed_candidates(system):
        z = poly_sqrt(system.c * d + 4)
        xy = poly_sqrt(p * d + 4)
        if z is None or xy is None:
            continue
        f = _normalize(_minimize(system, descend(system, branch, z, xy).fund))
        key = (f.z, canonical_poly(f.xy))
        if key not in found:
            found[key] = f
    return sorted(found.values(), key=lambda f: (sort_key(f.z), sort_key(canonical_poly(f.xy))))


# --------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class RecurrenceRun:
    branch: int
    fund: FundamentalSolution
    terms: tuple[GPoly, ...]
    partners: tuple[GPoly, ...]

    def __len__(self) -> int:
        return len(self.terms)


def run_sequence(system: PellSystem, branch: int, fund: FundamentalSolution, count: int) -> RecurrenceRun:
    if count < 1:
        raise ValueError("count must be at least 1")
    p, q = system.coefficients(branch)
    z, x = fund.z, fund.xy
    terms, partners = [z], [x]
    for k in range(1, count):
        nz = _half(q * z + system.c * x)
        nx = _half(q * x + p * z)
        if nz is None or nx is None:
            raise HalvingFailed(k)
        if k >= 2 and nz != q * terms[-1] - terms[-2]:
            raise HalvingFailed(k, f"recurrence mismatch at term {k}")
        z, x = nz, nx
        terms.append(z)
        partners.append(x)
    return RecurrenceRun(branch, fund, tuple(terms), tuple(partners))


@dataclass(frozen=True)
class Intersection:
    m: int
    n: int
    sign: int  # v_m == sign * w_n
    d: Optional[GPoly]
    run_v: RecurrenceRun = field(repr=False, compare=False)
    run_w: RecurrenceRun = field(repr=False, compare=False)

    @property
    def lemma5_ok(self) -> bool:
        return self.n - 1 <= self.m <= 2 * self.n + 1

    @property
    def z0(self) -> GPoly:
        return self.run_v.fund.z

    @property
    def z1(self) -> GPoly:
        return self.run_w.fund.z * self.sign


def intersect(system: PellSystem, run_v: RecurrenceRun, run_w: RecurrenceRun) -> list[Intersection]:
    """All ``(m, n)`` with ``v_m = ±w_n``; ``d = (v_m^2 - 4)/c`` when exact."""
    index: dict[GPoly, list[int]] = {}
    for n, w in enumerate(run_w.terms):
        index.setdefault(canonical_poly(w), []).append(n)
    out = []
    for m, v in enumerate(run_v.terms):
        for n in index.get(canonical_poly(v), ()):
            w = run_w.terms[n]
            sign = 1 if v == w else -1
            d = poly_div_exact(v * v - 4, system.c)
            out.append(Intersection(m, n, sign, d, run_v, run_w))
    return out


# --------------------------------------------------------------------------
# lemma reports

LEMMA_IDS = (
    "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "DEG_SC", "D_MINUS", "GAP0",
    "DEGREESD", "L3_7", "INIT3", "PROP1", "GAPDEG", "L4_4", "IDENT",
)


@dataclass(frozen=True)
class LemmaResult:
    lemma_id: str
    instance_id: str
    status: str  # pass | fail | not_applicable
    detail: str = ""

    def __post_init__(self):
        if self.lemma_id not in LEMMA_IDS:
            raise ValueError(f"unknown lemma id {self.lemma_id!r}")
        if self.status not in ("pass", "fail", "not_applicable"):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"lemma_id": self.lemma_id, "instance_id": self.instance_id,
                "status": self.status, "detail": self.detail}


def report_to_json(results: Iterable[LemmaResult]) -> str:
    return json.dumps([r.to_json() for r in results], indent=2)


def _result(lid: str, system: PellSystem, failures: list[str], detail_ok: str = "",
            applicable: bool = True) -> LemmaResult:
    iid = system.instance_id()
    if not applicable:
        return LemmaResult(lid, iid, "not_applicable", detail_ok)
    if failures:
        return LemmaResult(lid, iid, "fail", "; ".join(failures[:5]))
    return LemmaResult(lid, iid, "pass", detail_ok)


def _pm(p: GPoly, options: Iterable[GPoly]) -> bool:
    return any(p == o or p == -o for o in options)


@dataclass
class TripleAnalysis:
    """Everything the checkers need for one triple, computed once."""

    system: PellSystem
    depth: int
    d_plus: GPoly
    d_minus: GPoly
    plus_sign: int
    funds: dict
    runs: dict
    intersections: list

    @property
    def instance_id(self) -> str:
        return self.system.instance_id()

    def recovered(self) -> list[GPoly]:
        seen, out = set(), []
        for it in self.intersections:
            if it.d is not None and it.d not in seen:
                seen.add(it.d)
                out.append(it.d)
        return out


def analyze(triple, depth: int = 6) -> TripleAnalysis:
    system = triple if isinstance(triple, PellSystem) else build_system(triple)
    ext = extend_triple_regular(system.a, system.b, system.c)
    funds, runs = {}, {}
    for br in (1, 2):
        funds[br] = fundamental_solutions(system, br)
        rs = []
        for f in funds[br]:
            variants = [f] if not f.xy else [f, f.negated_partner()]
            rs.extend(run_sequence(system, br, g, depth + 1) for g in variants)
        runs[br] = rs
    inters = []
    for rv in runs[1]:
        for rw in runs[2]:
            inters.extend(intersect(system, rv, rw))
    return TripleAnalysis(system, depth, ext.d_plus, ext.d_minus, ext.plus_sign, funds, runs, inters)


# -- individual checkers ----------------------------------------------------


def check_fundamentals(an: TripleAnalysis) -> LemmaResult:
    sy = an.system
    fails = []
    for br in (1, 2):
        p, _ = sy.coefficients(br)
        if not an.funds[br]:
            fails.append(f"branch {br}: no fundamental solution")
        for f in an.funds[br]:
            if not sy.is_solution(br, f.z, f.xy):
                fails.append(f"branch {br}: ({f.z}, {f.xy}) not a solution")
            if not sy.within_bounds(br, f.z, f.xy):
                fails.append(f"branch {br}: ({f.z}, {f.xy}) exceeds degree bounds")
            if sy.c * f.d_seed + 4 != f.z * f.z or p * f.d_seed + 4 != f.xy * f.xy:
                fails.append(f"branch {br}: seed {f.d_seed} inconsistent")
    n = len(an.funds[1]) + len(an.funds[2])
    return _result("L2", sy, fails, f"{n} fundamental solutions within bounds")


def check_lemma3(an: TripleAnalysis) -> LemmaResult:
    sy = an.system
    g = sy.profile.gamma
    fails = []
    for br in (1, 2):
        p, _ = sy.coefficients(br)
        for run in an.runs[br]:
            for z, x in zip(run.terms, run.partners):
                if poly_congruent(z * z, 4, sy.c) and not poly_congruent(x * x, 4, p):
                    fails.append(f"branch {br}: z={z} but partner square not 4 mod p")
            z0 = run.fund.z
            if not z0.is_constant() and 2 * z0.deg < g:
                fails.append(f"branch {br}: deg z0 = {z0.deg} < γ/2")
    return _result("L3", sy, fails)


def check_degree_formulas(system: PellSystem, runs: Iterable[RecurrenceRun]) -> list[LemmaResult]:
    """Growth ``2deg v_m = (m-1)(α_p+γ) + 2deg v_1`` and ``γ <= 2deg v_1 <= (α_p+5γ)/2``.

    Applied to runs whose seed satisfies the fundamental bounds.
    """
    g = system.profile.gamma
    fails, used = [], 0
    for run in runs:
        pd = system.profile.alpha if run.branch == 1 else system.profile.beta
        if len(run.terms) < 2 or not system.within_bounds(run.branch, run.fund.z, run.fund.xy):
            continue
        used += 1
        v1 = run.terms[1]
        d1 = v1.deg
        tag = f"branch {run.branch} seed ({run.fund.z}, {run.fund.xy})"
        if not (g <= 2 * d1 and 4 * d1 <= pd + 5 * g):
            fails.append(f"{tag}: deg v1 = {d1} outside [γ/2, (α+5γ)/4]")
        for m in range(1, len(run.terms)):
            if 2 * run.terms[m].deg != (m - 1) * (pd + g) + 2 * d1:
                fails.append(f"{tag}: deg v{m} = {run.terms[m].deg}")
                break
    return [_result("L4", system, fails, f"{used} runs", applicable=used > 0)]


def check_lemma5(an: TripleAnalysis) -> LemmaResult:
    fails = [f"(m,n)=({it.m},{it.n})" for it in an.intersections if not it.lemma5_ok]
    return _result("L5", an.system, fails, f"{len(an.intersections)} intersections")


def check_parity_congruences(system: PellSystem, runs: Iterable[RecurrenceRun]) -> list[LemmaResult]:
    """``v_{2m} ≡ v_0`` and ``v_{2m+1} ≡ v_1 (mod c)``, and likewise for ``w``."""
    fails = []
    for run in runs:
        for k, v in enumerate(run.terms):
            ref = run.terms[k & 1] if len(run.terms) > 1 else run.terms[0]
            if not poly_congruent(v, ref, system.c):
                fails.append(f"branch {run.branch} term {k}")
    return [_result("L6", system, fails)]


def check_modc2_congruences(system: PellSystem, runs: Iterable[RecurrenceRun]) -> list[LemmaResult]:
    """The four congruences modulo ``c^2`` for even and odd terms."""
    c = system.c
    c2 = c * c
    fails = []
    for run in runs:
        p, q = system.coefficients(run.branch)
        z0, x0 = run.fund.z, run.fund.xy
        for k, v in enumerate(run.terms):
            m = k // 2
            if k % 2 == 0:
                inner = _half(p * z0 * (m * m) + q * x0 * m)
                if inner is None:
                    fails.append(f"branch {run.branch} term {k}: halving not exact")
                    continue
                rhs, lhs = z0 + c * inner, v
            else:
                half_coef = m * (m + 1) // 2  # m(m+1) is even
                rhs = q * z0 + c * (p * q * z0 * half_coef + x0 * (2 * m + 1))
                lhs = v * 2
            if not poly_congruent(lhs, rhs, c2):
                fails.append(f"branch {run.branch} term {k}")
    return [_result("L7", system, fails)]


def check_rst_congruence(system: PellSystem, d_minus) -> tuple[bool, Optional[int]]:
    """``±rst ≡ 2a + 2b - 2d_- (mod c)``; returns ``(holds, sign)``."""
    d_minus = as_poly(d_minus)
    rst = system.r * system.s * system.t
    target = (system.a + system.b - d_minus) * 2
    for sign in (1, -1):
        if poly_congruent(rst * sign, target, system.c):
            return True, sign
    return False, None


def _check_l8(an: TripleAnalysis) -> LemmaResult:
    ok, sign = check_rst_congruence(an.system, an.d_minus)
    return _result("L8", an.system, [] if ok else ["no sign of rst works"], f"sign {sign:+d}" if ok else "")


def check_alpha0_lemma(system: PellSystem, z0, x0) -> LemmaResult:
    z0, x0 = as_poly(z0), as_poly(x0)
    applicable = system.profile.alpha == 0 and x0.is_constant() and not z0.is_constant()
    if not applicable:
        return _result("L9", system, [], "needs α = 0, x0 constant, z0 non-constant", applicable=False)
    fails = []
    if x0:
        fails.append(f"x0 = {x0} != 0")
    if system.a not in (GPoly((TWO_I,)), GPoly((-TWO_I,))):
        fails.append(f"a = {system.a} not ±2i")
    if not _pm(z0, [system.s]):
        fails.append(f"z0 = {z0} not ±s")
    return _result("L9", system, fails, f"z0 = {z0}")


def _check_l9(an: TripleAnalysis) -> LemmaResult:
    results = [check_alpha0_lemma(an.system, f.z, f.xy) for f in an.funds[1]]
    applicable = [r for r in results if r.status != "not_applicable"]
    if not applicable:
        return results[0] if results else _result("L9", an.system, [], applicable=False)
    fails = [r.detail for r in applicable if r.status == "fail"]
    return _result("L9", an.system, fails, f"{len(applicable)} seeds")


def _check_deg_sc(an: TripleAnalysis) -> LemmaResult:
    sy = an.system
    pr = sy.profile
    regular = sy.c in (sy.a + sy.b + sy.r * 2, sy.a + sy.b - sy.r * 2)
    ok = regular or pr.gamma >= pr.alpha + pr.beta
    return _result("DEG_SC", sy, [] if ok else ["c irregular and γ < α + β"],
                   "c = a + b ± 2r" if regular else "γ >= α + β")


def _check_d_minus(an: TripleAnalysis) -> LemmaResult:
    pr = an.system.profile
    fails = []
    if an.d_minus and an.d_minus.deg != pr.gamma - pr.alpha - pr.beta:
        fails.append(f"deg d- = {an.d_minus.deg}, expected γ-α-β = {pr.gamma - pr.alpha - pr.beta}")
    if an.d_plus.deg != pr.alpha + pr.beta + pr.gamma:
        fails.append(f"deg d+ = {an.d_plus.deg}, expected α+β+γ")
    return _result("D_MINUS", an.system, fails, f"d- = {an.d_minus}")


def _check_gap0(an: TripleAnalysis) -> LemmaResult:
    hits = [it for it in an.intersections if it.d == an.d_minus]
    fails = [f"d- at (m,n)=({it.m},{it.n})" for it in hits if it.m > 1 or it.n > 1]
    return _result("GAP0", an.system, fails, f"{len(hits)} occurrences", applicable=bool(hits))


def _halves(system: PellSystem) -> list[GPoly]:
    cr, st = system.c * system.r, system.s * system.t
    return [h for h in (_half(cr + st), _half(cr - st)) if h is not None]


def classify_initials(system: PellSystem, z0, z1, d_minus) -> str:
    """Case label (``"1"``, ``"2a"`` ... ``"3d"``) of the initial pair producing ``d_-``."""
    z0, z1, d_minus = as_poly(z0), as_poly(z1), as_poly(d_minus)
    a, b, c, s, t = system.a, system.b, system.c, system.s, system.t
    al, be, ga = system.profile.alpha, system.profile.beta, system.profile.gamma
    two = [GPoly((2,))]
    hs = _halves(system)
    dd = d_minus.deg
    if not d_minus:
        if _pm(z0, two) and _pm(z1, two) and be == ga:
            return "1"
    elif dd == 0:
        if d_minus == a and a in (GPoly((TWO_I,)), GPoly((-TWO_I,))):
            if _pm(z0, [s]) and _pm(z1, [s]) and al == 0 and be == ga and c in (-b + TWO_I * 2, -b - TWO_I * 2):
                return "2a"
        elif _pm(z0, hs) and _pm(z1, hs) and al > 0 and ga == al + be:
            return "2b"
    else:
        if _pm(z0, hs) and _pm(z1, hs) and al > 0 and dd <= al and al + be < ga <= 2 * al + be:
            return "3a"
        if _pm(z0, hs) and _pm(z1, [s]) and al <= dd <= be and 2 * al + be <= ga <= al + 2 * be:
            return "3b"
        if _pm(z0, [t]) and _pm(z1, hs) and dd == al and al == be and ga == 3 * al:
            return "3c"
        if _pm(z0, [t]) and _pm(z1, [s]) and be <= dd < ga and ga >= al + 2 * be:
            return "3d"
    return "Unclassified"


def _check_degreesd(an: TripleAnalysis) -> LemmaResult:
    hits = [it for it in an.intersections if it.d == an.d_minus]
    if not hits:
        return _result("DEGREESD", an.system, ["d- not recovered from any intersection"])
    labels = {classify_initials(an.system, it.z0, it.z1, an.d_minus) for it in hits}
    good = sorted(lb for lb in labels if lb != "Unclassified")
    fails = [] if good else [f"(z0,z1)=({hits[0].z0},{hits[0].z1}) unclassified"]
    return _result("DEGREESD", an.system, fails, "case " + ",".join(good))


def _check_l3_7(an: TripleAnalysis) -> LemmaResult:
    sy = an.system
    a, b, c, s, t = sy.a, sy.b, sy.c, sy.s, sy.t
    pr = sy.profile
    if not (pr.beta < pr.gamma == pr.alpha + 2 * pr.beta):
        return _result("L3_7", sy, [], "needs β < γ = α + 2β", applicable=False)
    dm = an.d_minus
    for rr in (sy.r, -sy.r):
        if dm == a + b + rr * 2 and c == rr * (rr + a) * (b + rr):
            if _pm(s, [a * (b + rr) + 2]) and _pm(t, [b * (a + rr) + 2]):
                return _result("L3_7", sy, [], "family i")
        if dm == a + b - rr * 2 and c == rr * (rr - a) * (b - rr):
            if _pm(s, [a * (b - rr) + 2]) and _pm(t, [b * (rr - a) - 2]):
                return _result("L3_7", sy, [], "family ii")
    for e in (1, -1):
        two_i = GPoly((TWO_I * e,))
        if a == two_i and dm == -b + two_i * 2 and c == -(two_i * b * b) - b * 8 + GPoly((GaussianInt(0, 10 * e),)):
            if _pm(s, [-(b * 2 * e) + GPoly((GaussianInt(0, 4),))]):
                return _result("L3_7", sy, [], "family iii")
    return _result("L3_7", sy, [f"(a,b,d-,c) = ({a}, {b}, {dm}, {c}) matches no family"])


def _init3_cases(system: PellSystem, parity: tuple[int, int]) -> list[tuple[str, list, list, bool]]:
    a, b, c, r, s, t = system.a, system.b, system.c, system.r, system.s, system.t
    al, be, ga = system.profile.alpha, system.profile.beta, system.profile.gamma
    two = [GPoly((2,))]
    hs = _halves(system)
    reg_c = c in (a + b + r * 2, a + b - r * 2)
    if parity == (0, 0):
        return [("1a", two, two, True), ("1b", [s], [s], al == 0),
                ("1c", hs, hs, al > 0 and al + be <= ga <= 2 * al + be)]
    if parity == (1, 0):
        return [("2a", two, [s], ga >= 2 * al + be), ("2b", [s], two, al == 0),
                ("2c", [t], hs, al == be and ga == 3 * al)]
    if parity == (0, 1):
        return [("3a", [t], two, be < ga), ("3b", [s], two, reg_c and al == 0 and be == ga),
                ("3c", hs, [s], 2 * al + be <= ga <= al + 2 * be),
                ("3c*", [s], [s], al == 0 and be == ga)]
    return [("4a", two, hs, ga <= 2 * al + be), ("4a.i", two, two, be == ga and al > 0),
            ("4a.ii", two, [s], be == ga and al == 0), ("4b", hs, two, ga <= 2 * al + be),
            ("4b.ii", [s], two, be == ga and al == 0), ("4c", [t], [s], ga >= al + 2 * be)]


def _check_init3(an: TripleAnalysis) -> LemmaResult:
    sy = an.system
    fails, labels = [], set()
    for it in an.intersections:
        hit = None
        for label, zs0, zs1, cond in _init3_cases(sy, (it.m & 1, it.n & 1)):
            if cond and _pm(it.z0, zs0) and _pm(it.z1, zs1):
                hit = label
                break
        if hit is None:
            fails.append(f"(m,n)=({it.m},{it.n}) with (z0,z1)=({it.z0},{it.z1})")
        else:
            labels.add(hit)
    return _result("INIT3", sy, fails, "cases " + ",".join(sorted(labels)),
                   applicable=bool(an.intersections))


def _check_prop1(an: TripleAnalysis) -> LemmaResult:
    g = an.system.profile.gamma
    fails, n = [], 0
    for it in an.intersections:
        if not {0, 1, 2} & {it.m, it.n} or it.d is None:
            continue
        n += 1
        if not (it.d == an.d_plus or it.d.deg < g):
            fails.append(f"(m,n)=({it.m},{it.n}) gives d = {it.d}")
    return _result("PROP1", an.system, fails, f"{n} small-index intersections", applicable=n > 0)


def _is_quadruple(system: PellSystem, d: GPoly) -> bool:
    if not d or d in (system.a, system.b, system.c):
        return False
    return all(poly_sqrt(e * d + 4) is not None for e in (system.a, system.b, system.c))


def _check_gapdeg(an: TripleAnalysis) -> LemmaResult:
    pr = an.system.profile
    fails, n = [], 0
    for d in an.recovered():
        if not _is_quadruple(an.system, d) or d.deg < pr.gamma:
            continue
        n += 1
        if not (2 * d.deg >= 3 * pr.beta + 5 * pr.gamma or d == an.d_plus):
            fails.append(f"d = {d} with δ = {d.deg}")
    return _result("GAPDEG", an.system, fails, f"{n} quadruples with δ >= γ", applicable=n > 0)


def _runs_for(system: PellSystem, branch: int, z: GPoly, count: int) -> list[RecurrenceRun]:
    return [run_sequence(system, branch, f, count) for f in seed_solution(system, branch, z)]


def check_shift_identities(system: PellSystem, depth: int = 6) -> list[LemmaResult]:
    """Index-shift identities between runs seeded at ``±t`` (``±s``) and ``½(±cr ± st)``.

    Each identity ``u_{A, m+i} = σ u_{B, m+j}`` is accepted when some choice of
    partner signs for the two seeds makes it hold termwise up to ``depth``.
    """
    cr, st = system.c * system.r, system.s * system.t
    hm, hp = _half(cr - st), _half(cr + st)
    if hm is None or hp is None:
        return [_result("L4_4", system, ["½(cr ± st) not in Z[i][X]"])]
    count = depth + 2
    fails, checked = [], 0
    for branch, u in ((1, system.t), (2, system.s)):
        # (seed A, shift A, seed B, shift B, sign)
        idents = [
            (u, 0, -hm, 1, 1), (u, 0, hm, 1, -1),
            (-u, 1, hm, 0, 1), (-u, 1, -hm, 0, -1),
            (u, 1, hp, 0, 1), (-u, 0, -hp, 1, 1),
        ]
        cache: dict[GPoly, list[RecurrenceRun]] = {}
        for seed_a, ia, seed_b, ib, sign in idents:
            for sd in (seed_a, seed_b):
                if sd not in cache:
                    cache[sd] = _runs_for(system, branch, sd, count)
            ok = False
            for ra, rb in product(cache[seed_a], cache[seed_b]):
                if all(ra.terms[m + ia] == rb.terms[m + ib] * sign for m in range(depth)):
                    ok = True
                    break
            checked += 1
            if not ok:
                fails.append(f"branch {branch}: seed {seed_a} (+{ia}) vs {sign:+d}·seed {seed_b} (+{ib})")
    return [_result("L4_4", system, fails, f"{checked} equalities to depth {depth}")]


def check_identity_block(system: PellSystem, d, sign: int) -> list[LemmaResult]:
    """The four expressions of ``d_σ`` through ``u_σ, v_σ, w_σ`` (σ = ``sign``).

    Each product term is tried with both signs; the working sign is reported.
    """
    d = as_poly(d)
    a, b, c, r, s, t = system.a, system.b, system.c, system.r, system.s, system.t
    u, v, w = fourth_witnesses(a, b, c, system.wit, sign)
    checks = {
        "c": lambda e: c * 2 == (a + b + d) * 2 + a * b * d + r * u * v * e,
        "rw": lambda e: d == a + b - c + r * w * e,
        "sv": lambda e: d == a - b + c + s * v * e,
        "tu": lambda e: d == -a + b + c + t * u * e,
    }
    fails, signs = [], []
    for name, fn in checks.items():
        good = [e for e in (1, -1) if fn(e)]
        if good:
            signs.append(f"{name}:{good[0]:+d}")
        else:
            fails.append(f"{name} fails for d = {d}")
    return [_result("IDENT", system, fails, " ".join(signs))]


def _check_ident(an: TripleAnalysis) -> list[LemmaResult]:
    out = []
    for d, sgn in ((an.d_plus, an.plus_sign), (an.d_minus, -an.plus_sign)):
        out.extend(check_identity_block(an.system, d, sgn))
    return out


def _as_list(x) -> list[LemmaResult]:
    return x if isinstance(x, list) else [x]


REGISTRY: dict[str, Callable[[TripleAnalysis], Union[LemmaResult, list]]] = {
    "L2": check_fundamentals,
    "L3": check_lemma3,
    "L4": lambda an: check_degree_formulas(an.system, an.runs[1] + an.runs[2]),
    "L5": check_lemma5,
    "L6": lambda an: check_parity_congruences(an.system, an.runs[1] + an.runs[2]),
    "L7": lambda an: check_modc2_congruences(an.system, an.runs[1] + an.runs[2]),
    "L8": _check_l8,
    "L9": _check_l9,
    "DEG_SC": _check_deg_sc,
    "D_MINUS": _check_d_minus,
    "GAP0": _check_gap0,
    "DEGREESD": _check_degreesd,
    "L3_7": _check_l3_7,
    "INIT3": _check_init3,
    "PROP1": _check_prop1,
    "GAPDEG": _check_gapdeg,
    "L4_4": lambda an: check_shift_identities(an.system, an.depth),
    "IDENT": _check_ident,
}


def run_checkers(an: TripleAnalysis, ids: Optional[Iterable[str]] = None) -> list[LemmaResult]:
    out = []
    for lid in ids or LEMMA_IDS:
        out.extend(_as_list(REGISTRY[lid](an)))
    return out
