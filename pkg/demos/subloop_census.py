"""
Subloops of the trigintaduonion loop
====================================

The 64-element loop T_L has 375 subloops.  Here we enumerate them,
sort them into isomorphy classes and look at how the order-32 classes
differ in their maximal subloops.  The classification takes a few
seconds.
"""

from collections import Counter

from cdloops import build_cd_loop, classify, enumerate_subloops, is_normal
from cdloops.isoclass import composition_profile
from cdloops.subloops import enumerate_subloops_by_closure

T = build_cd_loop(5)
subs = enumerate_subloops(T)
print(len(subs), "subloops;", dict(sorted(Counter(s.order for s in subs).items())))

###############################################################################
# The XOR-subspace shortcut agrees with brute-force generator closure.

print("closure enumeration agrees:",
      [s.mask for s in subs] == [s.mask for s in enumerate_subloops_by_closure(T)])
print("all normal:", all(is_normal(T, s) for s in subs))

###############################################################################
# Isomorphy classes.  O~_L is the order-16 loop that is not Moufang.

classes = classify(subs)
for c in classes:
    print(f"{c.label:10} order {c.order:3}  x{c.size:<4} e.g. {c.representative.support}")

###############################################################################
# The order-32 classes by composition of their maximal subloops.

sixteen = [c for c in classes if c.order == 16]
for c in classes:
    if c.order == 32:
        print(c.label, composition_profile(c.representative, sixteen))
