"""
Regular extensions of a polynomial D(4)-pair
============================================

Start from a pair built by the constructive family, extend it to a triple
and then to a quadruple, and check the regularity identity at each stage.
"""

from d4kit import X, extend_pair_regular, extend_triple_regular, is_regular_quadruple
from d4kit import pair_family, poly_parse, verify_dtuple
from d4kit.dtuple import fourth_witnesses, regular_splits

###############################################################################
# The family (p, p q^2 + 4q) is always a D(4)-pair with witness p q + 2.
a, b = pair_family(X, poly_parse("1"))
pair = verify_dtuple([a, b])
print(pair.describe())

###############################################################################
# A pair extends to a triple by c = a + b +- 2r.
c_plus, c_minus, r = extend_pair_regular(a, b)
print("c+ =", c_plus, "  c- =", c_minus)

###############################################################################
# The triple has two regular fourth elements; here the lower one vanishes.
ext = extend_triple_regular(a, b, c_plus)
print("d+ =", ext.d_plus)
print("d- =", ext.d_minus)

###############################################################################
# The witnesses u, v, w of the fourth element square to ad+4, bd+4, cd+4.
u, v, w = fourth_witnesses(a, b, c_plus, ext.witnesses, ext.plus_sign)
print("u, v, w =", u, "|", v, "|", w)
assert u * u == a * ext.d_plus + 4

###############################################################################
# Regularity: (a+b-c-d)^2 = (ab+4)(cd+4). The bitmask lists which of the three
# splits of the sorted quadruple satisfy it.
quad = (a, b, c_plus, ext.d_plus)
print("regular:", is_regular_quadruple(*quad), " splits:", bin(regular_splits(*quad)))

###############################################################################
# A Gaussian example: this triple is irregular, and its d- is the constant 2i.
g = [poly_parse(s) for s in ("2i", "-2iX^2-4iX", "2iX^2+4iX+4i")]
gext = extend_triple_regular(*g)
print("d+ =", gext.d_plus, "  d- =", gext.d_minus)
