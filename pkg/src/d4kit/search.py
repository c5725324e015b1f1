"""Bounded enumeration of D(4)-pairs, triples and quadruples and the regularity audit.

Polynomials range over the box ``deg <= max_deg`` with ``|re|, |im| <= B`` per
coefficient (zero polynomial excluded). Pairs are found per first element
``a``: candidates ``b`` are grouped by degree and leading coefficient, only
groups whose leading product is a square survive, and the witness
``r = sqrt(ab+4)`` is solved top-down in vectorized exact Gaussian arithmetic.
First elements are taken up to multiplication by units and conjugation; the
pair set is closed under ``(a, b) -> (ua, b/u)`` and ``(a, b) -> (conj a, conj b)``.

Triples and 4-cliques come from the pair graph; every triple is additionally
extended through its first Pellian coordinate ``x`` (``d = (x^2-4)/a``), which
reaches fourth elements outside the box.
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .dtuple import extend_triple_regular, is_regular_quadruple, verify_dtuple
from .gint import GaussianInt, gi_sqrt
from .gpoly import GPoly, as_poly, canonical_poly, poly_print, poly_sqrt, sort_key

__all__ = [
    "SearchBounds",
    "AuditResult",
    "DISCLAIMER",
    "box_polys",
    "enumerate_pairs",
    "enumerate_pairs_naive",
    "extend_all",
    "partners",
    "audit_theorem",
    "audit_lemmas",
    "result_digest",
    "write_corpus",
]

DISCLAIMER = (
    "Bounded search: absence of irregular quadruples inside these bounds is "
    "evidence for the regularity theorem, not a proof, and says nothing about "
    "tuples outside the searched box."
)

_I64 = np.int64


@dataclass(frozen=True)
class SearchBounds:
    max_deg: int = 2
    coeff_bound: int = 4
    depth: int = 6

    def __post_init__(self):
        if self.max_deg < 0:
            raise ValueError("max_deg must be >= 0")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    def to_json(self) -> dict:
        return {"max_deg": self.max_deg, "coeff_bound": self.coeff_bound, "depth": self.depth}


# --------------------------------------------------------------------------
# vectorized exact Gaussian arithmetic on batches of polynomials
# A batch is a pair of int64 arrays (re, im) of shape (N, L), ascending powers.


def _isqrt(n: np.ndarray) -> np.ndarray:
    m = np.floor(np.sqrt(np.maximum(n, 0).astype(np.float64))).astype(_I64)
    m += (m + 1) * (m + 1) <= n
    m -= m * m > n
    return m


def _vec_gi_sqrt(re: np.ndarray, im: np.ndarray):
    """Canonical roots of a batch of Gaussian integers; ``ok`` marks the squares."""
    n = re * re + im * im
    m = _isqrt(n)
    ok = (m * m == n) & ((m + re) % 2 == 0)
    a2, b2 = (m + re) // 2, (m - re) // 2
    a, b = _isqrt(a2), _isqrt(b2)
    ok &= (a * a == a2) & (b * b == b2)
    b = np.where((a != 0) & (im < 0), -b, b)
    ok &= (a * a - b * b == re) & (2 * a * b == im)
    return a, b, ok


def _degrees(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    nz = (re != 0) | (im != 0)
    L = re.shape[1]
    return np.where(nz.any(axis=1), L - 1 - np.argmax(nz[:, ::-1], axis=1), -1)


def _vec_is_square(pre: np.ndarray, pim: np.ndarray) -> np.ndarray:
    """Boolean mask of rows that are squares in Z[i][X] (zero counts as a square)."""
    deg = _degrees(pre, pim)
    out = deg < 0
    for top in np.unique(deg):
        if top < 0 or top % 2:
            continue
        rows = np.nonzero(deg == top)[0]
        k = top // 2
        lr, li, ok = _vec_gi_sqrt(pre[rows, top], pim[rows, top])
        rows, lr, li = rows[ok], lr[ok], li[ok]
        rre = np.zeros((len(rows), k + 1), dtype=_I64)
        rim = np.zeros_like(rre)
        rre[:, k], rim[:, k] = lr, li
        alive = np.arange(len(rows))
        for j in range(1, k + 1):
            sre = pre[rows[alive], top - j].copy()
            sim = pim[rows[alive], top - j].copy()
            for i in range(1, j):
                xr, xi = rre[alive, k - i], rim[alive, k - i]
                yr, yi = rre[alive, k - j + i], rim[alive, k - j + i]
                sre -= xr * yr - xi * yi
                sim -= xr * yi + xi * yr
            dre, dim = 2 * rre[alive, k], 2 * rim[alive, k]
            nrm = dre * dre + dim * dim
            qre = sre * dre + sim * dim
            qim = sim * dre - sre * dim
            ok = (qre % nrm == 0) & (qim % nrm == 0)
            alive = alive[ok]
            rre[alive, k - j] = qre[ok] // nrm[ok]
            rim[alive, k - j] = qim[ok] // nrm[ok]
        for e in range(0, top - k):
            sre = pre[rows[alive], e].copy()
            sim = pim[rows[alive], e].copy()
            for i in range(max(0, e - k), min(e, k) + 1):
                xr, xi = rre[alive, i], rim[alive, i]
                yr, yi = rre[alive, e - i], rim[alive, e - i]
                sre -= xr * yr - xi * yi
                sim -= xr * yi + xi * yr
            alive = alive[(sre == 0) & (sim == 0)]
        out[rows[alive]] = True
    return out


def _vec_mul_fixed(p: GPoly, bre: np.ndarray, bim: np.ndarray):
    """``p * batch`` for a fixed polynomial ``p``."""
    n, lb = bre.shape
    lp = len(p.coeffs)
    ore = np.zeros((n, lp + lb - 1), dtype=_I64)
    oim = np.zeros_like(ore)
    for i, c in enumerate(p.coeffs):
        ore[:, i : i + lb] += c.re * bre - c.im * bim
        oim[:, i : i + lb] += c.re * bim + c.im * bre
    return ore, oim


def _vec_square(bre: np.ndarray, bim: np.ndarray):
    n, lb = bre.shape
    ore = np.zeros((n, 2 * lb - 1), dtype=_I64)
    oim = np.zeros_like(ore)
    for i in range(lb):
        for j in range(lb):
            ore[:, i + j] += bre[:, i] * bre[:, j] - bim[:, i] * bim[:, j]
            oim[:, i + j] += bre[:, i] * bim[:, j] + bim[:, i] * bre[:, j]
    return ore, oim


def _vec_div_exact(nre: np.ndarray, nim: np.ndarray, a: GPoly):
    """Batch exact division by a fixed nonzero ``a``; returns ``(qre, qim, ok)``."""
    n, L = nre.shape
    al = a.deg
    A = a.leading
    na = A.norm()
    rre, rim = nre.copy(), nim.copy()
    lq = max(L - al, 1)
    qre = np.zeros((n, lq), dtype=_I64)
    qim = np.zeros_like(qre)
    ok = np.ones(n, dtype=bool)
    for k in range(L - 1, al - 1, -1):
        xr = rre[:, k] * A.re + rim[:, k] * A.im
        xi = rim[:, k] * A.re - rre[:, k] * A.im
        ok &= (xr % na == 0) & (xi % na == 0)
        q_r, q_i = xr // na, xi // na
        qre[:, k - al], qim[:, k - al] = q_r, q_i
        for i, c in enumerate(a.coeffs):
            rre[:, k - al + i] -= q_r * c.re - q_i * c.im
            rim[:, k - al + i] -= q_r * c.im + q_i * c.re
    if al > 0:
        ok &= ~((rre[:, :al] != 0) | (rim[:, :al] != 0)).any(axis=1)
    return qre, qim, ok


# Necessary conditions at sample points: if ab + 4 = r^2 in Z[i][X] then
# a(x0) b(x0) + 4 = r(x0)^2 in Z[i]. Both points keep int64 products far from
# overflow for desk-scale boxes; larger values skip the filter.
EVAL_POINTS = (GaussianInt(2, 1), GaussianInt(3, 0))
_SAFE = 2 ** 30


def _vec_eval(re: np.ndarray, im: np.ndarray, x0: GaussianInt):
    """Values of a batch of polynomials at ``x0``."""
    vr = np.zeros(len(re), dtype=_I64)
    vi = np.zeros_like(vr)
    for j in range(re.shape[1] - 1, -1, -1):
        vr, vi = vr * x0.re - vi * x0.im + re[:, j], vr * x0.im + vi * x0.re + im[:, j]
    return vr, vi


def _max_abs(re: np.ndarray, im: np.ndarray) -> float:
    if not len(re):
        return 0.0
    return float(np.sqrt((re.astype(np.float64) ** 2 + im.astype(np.float64) ** 2).max()))


def _square_after(cr: np.ndarray, ci: np.ndarray, v: GaussianInt) -> np.ndarray:
    """Mask of ``v * c + 4`` being a Gaussian square."""
    wr = v.re * cr - v.im * ci + 4
    wi = v.re * ci + v.im * cr
    return _vec_gi_sqrt(wr, wi)[2]


def _rows_to_polys(re: np.ndarray, im: np.ndarray) -> list[GPoly]:
    return [GPoly([GaussianInt(int(x), int(y)) for x, y in zip(r, i)]) for r, i in zip(re, im)]


def _poly_row(p: GPoly, L: int):
    re = np.zeros(L, dtype=_I64)
    im = np.zeros(L, dtype=_I64)
    for k, c in enumerate(p.coeffs):
        re[k], im[k] = c.re, c.im
    return re, im


# --------------------------------------------------------------------------
# the coefficient box


class _Box:
    """All nonzero polynomials of the box as ``(N, D+1)`` real/imag arrays."""

    def __init__(self, bounds: SearchBounds) -> None:
        B, D = bounds.coeff_bound, bounds.max_deg
        vals = np.arange(-B, B + 1, dtype=_I64)
        g = np.array(list(product(vals, vals)), dtype=_I64)
        idx = np.array(list(product(range(len(g)), repeat=D + 1)), dtype=_I64)[:, ::-1]
        re, im = g[idx, 0], g[idx, 1]
        deg = _degrees(re, im)
        keep = deg >= 0
        self.re, self.im, self.deg = re[keep], im[keep], deg[keep]
        rows = np.arange(len(self.deg))
        self.lead_re = self.re[rows, self.deg]
        self.lead_im = self.im[rows, self.deg]
        self.D = D
        self.B = B
        self.groups: dict[tuple[int, int, int], np.ndarray] = {}
        order = np.lexsort((self.lead_im, self.lead_re, self.deg))
        for k in order:
            key = (int(self.deg[k]), int(self.lead_re[k]), int(self.lead_im[k]))
            self.groups.setdefault(key, []).append(k)
        self.groups = {k: np.array(v, dtype=_I64) for k, v in self.groups.items()}
        self._images: Optional[np.ndarray] = None
        self._rank: Optional[np.ndarray] = None
        self._candidates: dict[tuple, np.ndarray] = {}
        self.evals = []
        for x0 in EVAL_POINTS:
            vr, vi = _vec_eval(self.re, self.im, x0)
            self.evals.append((x0, vr, vi, _max_abs(vr, vi)))

    def candidates(self, a: GPoly) -> np.ndarray:
        """Indices whose degree parity and leading coefficient allow ``ab + 4`` to be a square."""
        key = (a.deg, a.leading)
        hit = self._candidates.get(key)
        if hit is None:
            parts = [members for (db, lre, lim), members in self.groups.items()
                     if (a.deg + db) % 2 == 0 and not (a.deg == 0 and db == 0)
                     and gi_sqrt(a.leading * GaussianInt(lre, lim)) is not None]
            hit = np.sort(np.concatenate(parts)) if parts else np.zeros(0, dtype=_I64)
            self._candidates[key] = hit
        return hit

    def __len__(self) -> int:
        return len(self.deg)

    def poly(self, k: int) -> GPoly:
        d = int(self.deg[k])
        return GPoly([GaussianInt(int(self.re[k, j]), int(self.im[k, j])) for j in range(d + 1)])

    def codes(self, re: np.ndarray, im: np.ndarray) -> np.ndarray:
        """Mixed-radix integer code of each coefficient row (rows must lie in the box)."""
        base = 2 * self.B + 1
        digits = (re + self.B) * base + (im + self.B)
        weights = base ** (2 * np.arange(self.D + 1, dtype=_I64))
        return digits @ weights

    def image_table(self) -> np.ndarray:
        """``(8, N)`` indices of ``i^e * p`` (row ``e``) and ``i^e * conj(p)`` (row ``4 + e``)."""
        if self._images is None:
            own = self.codes(self.re, self.im)
            order = np.argsort(own)
            table = np.empty((8, len(self)), dtype=_I64)
            for conj in (0, 1):
                re, im = self.re, (-self.im if conj else self.im)
                for e in range(4):
                    pos = np.searchsorted(own, self.codes(re, im), sorter=order)
                    table[4 * conj + e] = order[pos]
                    re, im = -im, re  # multiply by i
            self._images = table
        return self._images

    def representatives(self) -> list[int]:
        """Smallest index of each orbit under units and conjugation."""
        table = self.image_table()
        return np.nonzero(table.min(axis=0) == np.arange(len(self)))[0].tolist()


def box_polys(bounds: SearchBounds) -> list[GPoly]:
    box = _Box(bounds)
    return sorted((box.poly(k) for k in range(len(box))), key=sort_key)


def _partner_rows(box: _Box, a: GPoly) -> list[int]:
    """Box indices ``h`` with ``a * box[h] + 4`` a square (two constants excluded)."""
    cand = box.candidates(a)
    for x0, vr, vi, bound in box.evals:
        if not len(cand):
            break
        v = a(x0)
        if v and abs(v.re) + abs(v.im) < _SAFE / max(bound, 1.0):
            cand = cand[_square_after(vr[cand], vi[cand], v)]
    if not len(cand):
        return []
    pre, pim = _vec_mul_fixed(a, box.re[cand], box.im[cand])
    pre[:, 0] += 4
    return [int(h) for h in cand[_vec_is_square(pre, pim)]]


def _partners(box: _Box, ia: int) -> list[int]:
    return [ib for ib in _partner_rows(box, box.poly(ia)) if ib != ia]


def partners(a, bounds: SearchBounds) -> list[GPoly]:
    """Box elements ``b`` forming a D(4)-pair with ``a`` (``a`` itself need not lie in the box)."""
    a = as_poly(a)
    box = _Box(bounds)
    return sorted((b for b in map(box.poly, _partner_rows(box, a)) if b != a), key=sort_key)


def _chunk_pairs(args) -> list[tuple[int, int]]:
    bounds, reps = args
    box = _Box(bounds)
    return [(ia, ib) for ia in reps for ib in _partners(box, ia)]


def _pair_index(bounds: SearchBounds, jobs: int = 1) -> tuple[_Box, list[tuple[int, int]]]:
    """Ordered index pairs ``(ia, ib)``, ``sort_key(a) < sort_key(b)``, sorted."""
    box = _Box(bounds)
    reps = box.representatives()
    if jobs <= 1:
        raw = _chunk_pairs((bounds, reps))
    else:
        n = max(1, len(reps) // (jobs * 8))
        chunks = [(bounds, reps[i : i + n]) for i in range(0, len(reps), n)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            raw = [p for part in ex.map(_chunk_pairs, chunks) for p in part]
    # close under units and conjugation: (a, b) -> (u a, u^-1 b), (conj a, conj b)
    table = box.image_table()
    raw = np.array(raw, dtype=_I64).reshape(-1, 2)
    images = []
    for conj in (0, 1):
        for e in range(4):
            ja = table[4 * conj + e, raw[:, 0]]
            jb = table[4 * conj + (-e) % 4, raw[:, 1]]
            images.append(np.stack([np.minimum(ja, jb), np.maximum(ja, jb)], axis=1))
    found = np.unique(np.concatenate(images), axis=0)
    rank = _ranks(box)
    swap = rank[found[:, 0]] > rank[found[:, 1]]
    found[swap] = found[swap][:, ::-1]
    found = found[np.lexsort((rank[found[:, 1]], rank[found[:, 0]]))]
    return box, [(int(i), int(j)) for i, j in found]


def _ranks(box: _Box) -> np.ndarray:
    if box._rank is not None:
        return box._rank
    keys = [sort_key(box.poly(k)) for k in range(len(box))]
    order = sorted(range(len(box)), key=keys.__getitem__)
    rank = np.empty(len(box), dtype=_I64)
    rank[order] = np.arange(len(box))
    box._rank = rank
    return rank


def enumerate_pairs(bounds: SearchBounds, jobs: int = 1) -> Iterator[tuple[GPoly, GPoly, GPoly]]:
    """All unordered D(4)-pairs ``(a, b, r)`` of the box, ``a`` before ``b`` in sort order.

    Pairs of two constants are excluded. Output order is canonical and does
    not depend on ``jobs``.
    """
    box, pairs = _pair_index(bounds, jobs)
    for ia, ib in pairs:
        a, b = box.poly(ia), box.poly(ib)
        yield a, b, poly_sqrt(a * b + 4)


def enumerate_pairs_naive(bounds: SearchBounds) -> set[tuple[GPoly, GPoly]]:
    """Reference oracle: plain double loop with scalar square roots."""
    polys = box_polys(bounds)
    found = set()
    for i, a in enumerate(polys):
        for b in polys[i + 1 :]:
            if a.is_constant() and b.is_constant():
                continue
            if poly_sqrt(a * b + 4) is not None:
                found.add((a, b))
    return found


def extend_all(a, b, bounds: SearchBounds) -> Iterator[GPoly]:
    """All box elements ``c`` with ``{a, b, c}`` a D(4)-triple, in sort order."""
    a, b = as_poly(a), as_poly(b)
    box = _Box(bounds)
    mask = np.ones(len(box), dtype=bool)
    for p in (a, b):
        pre, pim = _vec_mul_fixed(p, box.re, box.im)
        pre[:, 0] += 4
        mask &= _vec_is_square(pre, pim)
    out = []
    for k in np.nonzero(mask)[0]:
        c = box.poly(int(k))
        if c in (a, b) or sum(1 for e in (a, b, c) if e.is_constant()) > 1:
            continue
        out.append(c)
    yield from sorted(out, key=sort_key)


class _XGrid:
    """Canonical-sign box polynomials used as Pellian coordinates, with ``x^2 - 4``."""

    def __init__(self, box: _Box) -> None:
        canon = [k for k in range(len(box)) if canonical_poly(box.poly(k)) == box.poly(k)]
        self._set(box.re[canon], box.im[canon])

    def _set(self, re: np.ndarray, im: np.ndarray) -> None:
        self.re, self.im = _vec_square(re, im)
        self.re[:, 0] -= 4
        # values of x^2 - 4 at the sample points
        self.evals = []
        for x0 in EVAL_POINTS:
            vr, vi = _vec_eval(re, im, x0)
            sr, si = vr * vr - vi * vi - 4, 2 * vr * vi
            self.evals.append((x0, sr, si, _max_abs(vr, vi) ** 2 + 4))

    @classmethod
    def from_polys(cls, polys: Iterable[GPoly], width: int) -> _XGrid:
        """Grid over explicit polynomials of degree < ``width``."""
        rows = sorted({canonical_poly(as_poly(p)) for p in polys} - {GPoly()}, key=sort_key)
        cells = [_poly_row(p, width) for p in rows]
        grid = cls.__new__(cls)
        grid._set(np.array([c[0] for c in cells], dtype=_I64).reshape(-1, width),
                  np.array([c[1] for c in cells], dtype=_I64).reshape(-1, width))
        return grid


def _x_extensions(triple, grid: _XGrid) -> list[GPoly]:
    """``d = (x^2 - 4)/a`` over the grid with ``bd + 4`` and ``cd + 4`` squares."""
    a, b, c = triple
    rows = np.arange(len(grid.re))
    for x0, sr, si, bound in grid.evals:
        av, bv, cv = a(x0), b(x0), c(x0)
        na = av.norm()
        big = max(abs(bv.re) + abs(bv.im), abs(cv.re) + abs(cv.im), 1)
        if not na or bound * big >= _SAFE:
            continue
        # d(x0) = s(x0) / a(x0) must be a Gaussian integer
        nr = sr[rows] * av.re + si[rows] * av.im
        ni = si[rows] * av.re - sr[rows] * av.im
        ok = (nr % na == 0) & (ni % na == 0)
        rows, dr, di = rows[ok], nr[ok] // na, ni[ok] // na
        for v in (bv, cv):
            keep = _square_after(dr, di, v)
            rows, dr, di = rows[keep], dr[keep], di[keep]
    qre, qim, ok = _vec_div_exact(grid.re[rows], grid.im[rows], a)
    qre, qim = qre[ok], qim[ok]
    nonzero = ((qre != 0) | (qim != 0)).any(axis=1)
    qre, qim = qre[nonzero], qim[nonzero]
    for p in (b, c):
        if not len(qre):
            break
        pre, pim = _vec_mul_fixed(p, qre, qim)
        pre[:, 0] += 4
        sq = _vec_is_square(pre, pim)
        qre, qim = qre[sq], qim[sq]
    return [d for d in _rows_to_polys(qre, qim) if d not in triple]


# --------------------------------------------------------------------------
# graph search and audit


def _graph(pairs: Iterable[tuple[int, int]]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for ia, ib in pairs:
        adj.setdefault(ia, set()).add(ib)
        adj.setdefault(ib, set()).add(ia)
    return adj


def _sorted_tuple(polys: Iterable[GPoly]) -> tuple[GPoly, ...]:
    return tuple(sorted(polys, key=sort_key))


def _tuple_order(rows):
    return sorted(rows, key=lambda t: [sort_key(p) for p in t])


def _triples(box: _Box, pairs: list[tuple[int, int]], rank) -> list[tuple[int, int, int]]:
    adj = _graph(pairs)
    out = []
    for ia, ib in pairs:  # rank[ia] < rank[ib]
        for ic in adj[ia] & adj[ib]:
            if rank[ic] > rank[ib]:
                out.append((ia, ib, ic))
    return out


@dataclass
class AuditResult:
    bounds: SearchBounds
    counts: dict
    violations: list = field(default_factory=list)
    elapsed: float = 0.0
    digest: str = ""
    pairs: list = field(default_factory=list, repr=False)
    triples: list = field(default_factory=list, repr=False)
    quadruples: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def manifest(self) -> dict:
        return {
            "bounds": self.bounds.to_json(),
            "counts": self.counts,
            "violations": self.violations,
            "digest": self.digest,
            "elapsed_seconds": round(self.elapsed, 3),
            "disclaimer": DISCLAIMER,
        }


def _tuple_text(t: Iterable[GPoly]) -> str:
    return "{" + ", ".join(poly_print(p) for p in t) + "}"


def result_digest(pairs, triples, quadruples) -> str:
    h = hashlib.sha256()
    for label, rows in (("pairs", pairs), ("triples", triples), ("quadruples", quadruples)):
        h.update(label.encode())
        for row in rows:
            h.update(_tuple_text(row).encode())
            h.update(b"\n")
    return h.hexdigest()


def _quadruple_violation(q: tuple[GPoly, ...]) -> Optional[dict]:
    if not is_regular_quadruple(*q):
        return {"quadruple": [poly_print(p) for p in q], "reason": "regularity identity fails"}
    ext = extend_triple_regular(*q[:3])
    if q[3] not in (ext.d_plus, ext.d_minus):
        return {"quadruple": [poly_print(p) for p in q], "reason": "largest element is not d+ or d- of the rest"}
    return None


def audit_theorem(bounds: SearchBounds, jobs: int = 1, extend_by_x: bool = True,
                  progress: Optional[Callable[[str], None]] = None) -> AuditResult:
    """Enumerate pairs, triples and quadruples and check every quadruple for regularity."""
    t0 = time.perf_counter()
    box, pair_idx = _pair_index(bounds, jobs)
    rank = _ranks(box)
    if progress:
        progress(f"{len(pair_idx)} pairs")
    tri_idx = _triples(box, pair_idx, rank)
    if progress:
        progress(f"{len(tri_idx)} triples")
    adj = _graph(pair_idx)
    quads = set()
    for ia, ib, ic in tri_idx:
        for idd in adj[ia] & adj[ib] & adj[ic]:
            if rank[idd] > rank[ic]:
                quads.add(_sorted_tuple(box.poly(i) for i in (ia, ib, ic, idd)))
    pairs = [(box.poly(i), box.poly(j)) for i, j in pair_idx]
    triples = [tuple(box.poly(i) for i in t) for t in tri_idx]
    if extend_by_x:
        grid = _XGrid(box)
        for n, t in enumerate(triples):
            for d in _x_extensions(t, grid):
                quads.add(_sorted_tuple((*t, d)))
            if progress and n % 500 == 499:
                progress(f"extended {n + 1}/{len(triples)} triples")
    triples = _tuple_order(triples)
    quads = _tuple_order(quads)
    if progress:
        progress(f"{len(quads)} quadruples")
    violations = [v for v in map(_quadruple_violation, quads) if v]
    return AuditResult(
        bounds,
        {"pairs": len(pairs), "triples": len(triples), "quadruples": len(quads)},
        violations,
        time.perf_counter() - t0,
        result_digest(pairs, triples, quads),
        pairs,
        triples,
        quads,
    )


def audit_lemmas(bounds: SearchBounds, triples=None, jobs: int = 1) -> list:
    """Run every registered lemma checker over every triple of the box."""
    from .pell import analyze, run_checkers

    if triples is None:
        box, pair_idx = _pair_index(bounds, jobs)
        rank = _ranks(box)
        triples = _tuple_order(tuple(box.poly(i) for i in t) for t in _triples(box, pair_idx, rank))
    out = []
    for t in triples:
        out.extend(run_checkers(analyze(t, bounds.depth)))
    return out


def write_corpus(result: AuditResult, out_dir=None) -> tuple[Path, Path]:
    """Write ``corpus.jsonl`` (one verified tuple per line) and ``manifest.json``."""
    out = Path(out_dir or os.environ.get("D4KIT_OUT_DIR", "d4kit_out"))
    out.mkdir(parents=True, exist_ok=True)
    corpus = out / "corpus.jsonl"
    with corpus.open("w") as fh:
        for row in result.triples + result.quadruples:
            fh.write(verify_dtuple(row, 4).dumps() + "\n")
    manifest = out / "manifest.json"
    manifest.write_text(json.dumps(result.manifest(), indent=2, sort_keys=True) + "\n")
    return corpus, manifest
