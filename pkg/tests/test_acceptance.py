"""Acceptance criteria, one test each.

Every test records a one-line verdict; ``conftest.py`` prints them at the end
of the pytest run, and ``python tests/test_acceptance.py`` prints them directly.
"""
import os
import random
import time
from math import isqrt

import pytest

from d4kit.dtuple import (
    DegenerateInput,
    extend_pair_regular,
    extend_triple_regular,
    fourth_witnesses,
    lift_dminus4,
    pair_family,
    verify_dtuple,
)
from d4kit.gint import GaussianInt, gi_sqrt
from d4kit.gpoly import GPoly, poly_sqrt, sort_key
from d4kit.pell import analyze, run_checkers
from d4kit.polytext import poly_parse
from d4kit.search import SearchBounds, audit_theorem, enumerate_pairs, enumerate_pairs_naive

VERDICTS: dict[int, str] = {}
SEED = 20240611


def record(n: int, ok: bool, detail: str) -> None:
    VERDICTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


# -- shared corpus for criteria 2 to 5 ----------------------------------------


def _random_poly(rng: random.Random, max_deg: int, bound: int) -> GPoly:
    while True:
        d = rng.randint(0, max_deg)
        p = GPoly([GaussianInt(rng.randint(-bound, bound), rng.randint(-bound, bound))
                   for _ in range(d + 1)])
        if p:
            return p


def family_pairs(count: int = 200, seed: int = SEED) -> list[tuple[GPoly, GPoly]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        try:
            out.append(pair_family(_random_poly(rng, 2, 5), _random_poly(rng, 2, 5)))
        except DegenerateInput:
            continue
    return out


def _ordered(*polys):
    return tuple(sorted(polys, key=sort_key))


def induced_triples(pairs):
    """Regular triples ``{a, b, c±}`` (first admissible sign) and, from each
    quadruple ``{a, b, c, d+}``, the irregular triple formed by dropping the
    second element."""
    regular, irregular = [], []
    for a, b in pairs:
        cp, cm, _ = extend_pair_regular(a, b)
        c = next((x for x in (cp, cm) if x and x not in (a, b)), None)
        if c is None or sum(e.is_constant() for e in (a, b, c)) > 1:
            continue
        t = _ordered(a, b, c)
        regular.append(t)
        q = _ordered(*t, extend_triple_regular(*t).d_plus)
        irregular.append((q[0], q[2], q[3]))
    return regular, irregular


@pytest.fixture(scope="module")
def corpus():
    pairs = family_pairs()
    regular, irregular = induced_triples(pairs)
    return pairs, regular, irregular


# -- 1 ---------------------------------------------------------------------


def test_criterion_1_remark_triple():
    t0 = time.perf_counter()
    a, b, c = (poly_parse(s) for s in ("2i", "-2iX^2-4iX", "2iX^2+4iX+4i"))
    t = verify_dtuple([a, b, c])
    r, s, w = t.witness(0, 1), t.witness(0, 2), t.witness(1, 2)
    two_sq = poly_parse("2X^2+4X+2")
    ok = w in (two_sq, -two_sq) and r * r == w * 2 and s * s == w * -2
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1
    record(1, ok, f"t = {w}, r^2 = 2t and s^2 = -2t exact ({elapsed:.3f}s)")
    assert ok


# -- 2 ---------------------------------------------------------------------


def test_criterion_2_extension_identities(corpus):
    t0 = time.perf_counter()
    pairs, regular, irregular = corpus
    fails = []
    for a, b in pairs:
        cp, cm, r = extend_pair_regular(a, b)
        for c, sign in ((cp, 1), (cm, -1)):
            if (c - a - b) * (c - a - b) != (a * b + 4) * 4:
                fails.append(("pair", a, b))
            ar, br = a + r * sign, b + r * sign
            if a * c + 4 != ar * ar or b * c + 4 != br * br:
                fails.append(("witness", a, b))
    for a, b, c in regular + irregular:
        ext = extend_triple_regular(a, b, c)
        for d, sign in ((ext.d_plus, ext.plus_sign), (ext.d_minus, -ext.plus_sign)):
            u, v, w = fourth_witnesses(a, b, c, ext.witnesses, sign)
            if (u * u, v * v, w * w) != (a * d + 4, b * d + 4, c * d + 4):
                fails.append(("uvw", a, b, c))
        rhs = a * a + b * b + c * c - (a * b + a * c + b * c) * 2 - 16
        if ext.d_plus * ext.d_minus != rhs:
            fails.append(("product", a, b, c))
    elapsed = time.perf_counter() - t0
    ok = not fails and elapsed < 30
    record(2, ok, f"{len(pairs)} pairs, {len(regular) + len(irregular)} triples, "
                  f"{len(fails)} failures ({elapsed:.1f}s)")
    assert ok, fails[:3]


# -- 3 ---------------------------------------------------------------------


def test_criterion_3_degree_laws(corpus):
    _, regular, irregular = corpus
    fails, nonzero_minus = [], 0
    for a, b, c in regular + irregular:
        ext = extend_triple_regular(a, b, c)
        if ext.d_plus.deg != a.deg + b.deg + c.deg:
            fails.append(("d+", a, b, c))
        if ext.d_minus:
            nonzero_minus += 1
            if ext.d_minus.deg != c.deg - a.deg - b.deg:
                fails.append(("d-", a, b, c))
    ok = not fails and nonzero_minus > 0
    record(3, ok, f"{len(regular) + len(irregular)} triples ({nonzero_minus} with d- != 0), "
                  f"{len(fails)} failures")
    assert ok, fails[:3]


# -- 4 and 5 ------------------------------------------------------------------

RECURRENCE_IDS = ["L4", "L6", "L7", "L8", "L4_4"]


@pytest.fixture(scope="module")
def analyses(corpus):
    _, regular, irregular = corpus
    chosen = regular[:30] + irregular[:30]
    return [analyze(t, 6) for t in chosen]


def test_criterion_4_recurrence_congruences(analyses):
    t0 = time.perf_counter()
    results = [r for an in analyses for r in run_checkers(an, RECURRENCE_IDS)]
    fails = [r for r in results if r.status == "fail"]
    elapsed = time.perf_counter() - t0
    ok = len(analyses) >= 50 and not fails and elapsed < 300
    record(4, ok, f"{len(analyses)} triples at depth 6, {len(results)} checks "
                  f"({', '.join(RECURRENCE_IDS)}), {len(fails)} failures ({elapsed:.1f}s)")
    assert ok, [f.detail for f in fails[:3]]


def test_criterion_5_intersection_dichotomy(analyses):
    total, violations, minus_hits = 0, [], 0
    for an in analyses:
        gamma = an.system.profile.gamma
        for it in an.intersections:
            if it.d is None:
                continue
            total += 1
            if not (it.d == an.d_plus or it.d.deg < gamma):
                violations.append((an.instance_id, it.m, it.n, str(it.d)))
            if it.d == an.d_minus:
                minus_hits += 1
                if it.m > 1 or it.n > 1:
                    violations.append((an.instance_id, it.m, it.n, "d-"))
    ok = total > 0 and not violations
    record(5, ok, f"{total} intersections ({minus_hits} giving d-), {len(violations)} violations")
    assert ok, violations[:3]


# -- 6 ---------------------------------------------------------------------

AUDIT_BOUNDS = SearchBounds(
    int(os.environ.get("D4KIT_AUDIT_DEG", "2")),
    int(os.environ.get("D4KIT_AUDIT_B", "4")),
)


@pytest.mark.slow
def test_criterion_6_main_theorem_audit():
    first = audit_theorem(AUDIT_BOUNDS)
    second = audit_theorem(AUDIT_BOUNDS)
    c = first.counts
    ok = (c["quadruples"] > 0 and not first.violations and not second.violations
          and first.digest == second.digest and first.elapsed < 1800)
    record(6, ok, f"deg <= {AUDIT_BOUNDS.max_deg}, B = {AUDIT_BOUNDS.coeff_bound}: "
                  f"{c['pairs']} pairs, {c['triples']} triples, {c['quadruples']} quadruples, "
                  f"{len(first.violations)} violations, digest {first.digest[:12]} twice "
                  f"({first.elapsed:.0f}s + {second.elapsed:.0f}s)")
    assert ok


# -- 7 ---------------------------------------------------------------------


def _brute_roots(z: GaussianInt) -> set:
    m = isqrt(z.norm())
    if m * m != z.norm():
        return set()
    k = isqrt(m)
    return {GaussianInt(x, y) for x in range(-k, k + 1) for y in range(-k, k + 1)
            if x * x + y * y == m and GaussianInt(x, y) * GaussianInt(x, y) == z}


def test_criterion_7_oracles():
    mismatches = 0
    for re in range(-100, 101):
        for im in range(-100, 101):
            z = GaussianInt(re, im)
            roots, got = _brute_roots(z), gi_sqrt(z)
            if (got is None) != (not roots) or (got is not None and roots != {got, -got}):
                mismatches += 1
    pair_sets = []
    for deg, bound in ((0, 1), (0, 2), (1, 1), (1, 2)):
        b = SearchBounds(deg, bound)
        fast = {(x, y) for x, y, _ in enumerate_pairs(b)}
        pair_sets.append(fast == enumerate_pairs_naive(b))
    ok = mismatches == 0 and all(pair_sets)
    record(7, ok, f"gi_sqrt on 201x201 box: {mismatches} mismatches; pair enumeration "
                  f"equals naive loop on {sum(pair_sets)}/4 boxes")
    assert ok


# -- 8 ---------------------------------------------------------------------


def irregular_integer_dminus4_triples(limit: int = 3000) -> list[tuple[int, int, int]]:
    """Integer D(-4)-triples ``a < b < c < limit`` with ``c != a + b + 2r``."""
    def square(n):
        return n >= 0 and isqrt(n) ** 2 == n

    out = []
    for a in range(1, 60):
        for b in range(a + 1, limit):
            if not square(a * b - 4):
                continue
            r = isqrt(a * b - 4)
            for x in range(1, isqrt(a * limit) + 2):
                if (x * x + 4) % a:
                    continue
                c = (x * x + 4) // a
                if b < c < limit and square(b * c - 4) and c != a + b + 2 * r:
                    out.append((a, b, c))
    return out


def test_criterion_8_lift():
    t0 = time.perf_counter()
    triples = irregular_integer_dminus4_triples()
    fails = []
    for t in triples:
        a, b, c = (GPoly((v,)) for v in t)
        res = lift_dminus4(a, b, c)
        lifted_ok = all(w * w == x * y + 4 for (i, j), w in res.lifted.witnesses.items()
                        for x, y in [(res.lifted.elements[i], res.lifted.elements[j])])
        quads = [e for e in res.extensions if e.status == "quadruple"]
        if not lifted_ok or len(quads) != 2:
            fails.append(t)
            continue
        for e in quads:
            if any(poly_sqrt(x * e.d + 4) is None for x in (a, b, c)):
                fails.append(t)
    # non-constant triples in Z[X]: the lift is checked too, but these are regular,
    # so the minus extension collapses to 0
    poly = lift_dminus4(poly_parse("1"), poly_parse("X^2+4"), poly_parse("X^2+2X+5"))
    poly_status = [e.status for e in poly.extensions]
    elapsed = time.perf_counter() - t0
    ok = len(triples) >= 10 and not fails and elapsed < 10
    record(8, ok, f"{len(triples)} irregular D(-4)-triples lifted, both d+ and d- give "
                  f"D(-4;4)-quadruples for {len(triples) - len(fails)}; non-constant "
                  f"regular example gives {poly_status} ({elapsed:.2f}s)")
    assert ok, fails[:3]


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
