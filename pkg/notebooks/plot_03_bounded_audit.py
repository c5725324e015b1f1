"""
A bounded audit of the regularity theorem
=========================================

Enumerate every D(4)-pair, triple and quadruple in a small coefficient box,
check each quadruple for regularity, and lift a few D(-4)-triples.
"""

import tempfile

from d4kit import SearchBounds, audit_theorem, lift_dminus4, poly_parse
from d4kit.search import write_corpus

###############################################################################
# Degree at most 2, coefficients with |re|, |im| <= 2.
res = audit_theorem(SearchBounds(max_deg=2, coeff_bound=2))
print(res.counts, "violations:", len(res.violations))
print("digest", res.digest)

###############################################################################
# A few of the quadruples found.
for q in res.quadruples[:5]:
    print("{" + ", ".join(str(p) for p in q) + "}")

###############################################################################
# The corpus and manifest are written as JSON lines and JSON.
with tempfile.TemporaryDirectory() as tmp:
    corpus, manifest = write_corpus(res, tmp)
    print(corpus.name, sum(1 for _ in corpus.open()), "lines")
    print(manifest.read_text()[:300])

###############################################################################
# D(-4)-triples over Z lift to D(4)-triples over Z[i]; both fourth elements of
# an irregular triple give D(-4;4)-quadruples.
lift = lift_dminus4(*(poly_parse(s) for s in ("1", "5", "40")))
print("lifted:", [str(e) for e in lift.lifted.elements])
for e in lift.extensions:
    print(f"d{'+' if e.sign > 0 else '-'} = {e.d}: {e.status}")
