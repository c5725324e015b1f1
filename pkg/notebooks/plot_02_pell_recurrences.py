"""
Pellian equations and their recurrence sequences
================================================

Eliminating the fourth element of a quadruple gives two Pellian equations.
Their solutions form binary recurrences, and common terms of the two
recurrences give back the extensions of the triple.
"""

from d4kit import analyze, build_system, poly_parse, run_checkers
from d4kit.pell import fundamental_solutions, run_sequence

###############################################################################
# The system carries the triple, its witnesses and the degree profile.
system = build_system([poly_parse(s) for s in ("X", "X+4", "4X+8")])
print(system.instance_id(), system.profile)
print("r, s, t =", system.r, "|", system.s, "|", system.t)

###############################################################################
# Fundamental solutions of a z^2 - c x^2 = 4(a - c) (branch 1).
for f in fundamental_solutions(system, 1):
    print("z0 =", f.z, " x0 =", f.xy, " from d =", f.d_seed)

###############################################################################
# v_{m+2} = s v_{m+1} - v_m, started at (z0, x0) = (2, 2).
fund = [f for f in fundamental_solutions(system, 1) if f.xy == poly_parse("2")][0]
run = run_sequence(system, 1, fund, 4)
for m, v in enumerate(run.terms):
    print(f"v_{m} = {v}")

###############################################################################
# Matching v_m = +-w_n recovers d = (v_m^2 - 4)/c. Only d+ and degenerate
# values should appear.
an = analyze(system, depth=6)
for it in an.intersections[:8]:
    print(f"(m, n) = ({it.m}, {it.n})  sign {it.sign:+d}  d = {it.d}")
print("d+ =", an.d_plus)

###############################################################################
# The full lemma registry for this triple.
for res in run_checkers(an):
    print(f"{res.lemma_id:8s} {res.status:15s} {res.detail}")
