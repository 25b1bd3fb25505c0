"""
Zero divisors and the subloop lattice
=====================================

Every 16-dimensional subalgebra of the trigintaduonions has zero
divisors of the form (e_a +- e_b)(e_c +- e_d) = 0, while the octonions
have none.  The subloop lattice of T_L is modular.
"""

from cdloops import build_cd_loop, build_lattice, enumerate_subloops, find_zero_divisor, is_modular, norm_sq
from cdloops.lattice import height

T = build_cd_loop(5)
subs = enumerate_subloops(T)

###############################################################################
# A sedenion pair, checked in exact integers.

u, v = find_zero_divisor(T, range(16))
print(u, "*", v, "=", u * v, "| norms", norm_sq(u), norm_sq(v))
print("octonions:", find_zero_divisor(T, range(8)))

hits = sum(find_zero_divisor(T, s.support) is not None for s in subs if s.order == 32)
print(hits, "of 31 sixteen-dimensional subalgebras have two-term zero divisors")

###############################################################################
# The lattice.

lat = build_lattice(subs)
print(len(lat), "nodes,", len(lat.covers), "cover edges, height", height(lat))
print("modular:", is_modular(lat)[0])
