"""
Signed basis loops
==================

The basis elements of a Cayley-Dickson algebra, with their negatives,
are closed under multiplication.  This script builds the first few of
these loops and looks at where associativity and the Moufang law give
out.
"""

import numpy as np

from cdloops import build_cd_loop, check_identity, multiply_basis
from cdloops.cdcore import format_code

###############################################################################
# The quaternion units: e1 e2 = e3 but e2 e1 = -e3.

print(multiply_basis(1, 2, 2), multiply_basis(2, 1, 2))

H = build_cd_loop(2)
for i in range(H.half):
    print(" ".join(format_code(int(c), H.half).rjust(4) for c in H.table[i, : H.half]))

###############################################################################
# Each doubling keeps the loop axioms but loses a law.

for n in range(1, 6):
    L = build_cd_loop(n)
    laws = {name: check_identity(L, name).holds for name in ("COMM", "ASSOC", "MOUFANG", "FL")}
    print(f"{L.name:4} order {L.order:3}", laws)

###############################################################################
# Every product of basis elements lands on the XOR of the indices.

T = build_cd_loop(5)
idx = T.table[: T.half, : T.half] % T.half
print("index(e_i e_j) == i ^ j:", bool((idx == np.bitwise_xor.outer(np.arange(32), np.arange(32))).all()))
