"""The composite-functor spectral sequence on group homology fixtures.

Coinvariants along C4 -> C4/C2 followed by coinvariants of the quotient
compose to coinvariants of C4; the spectral sequence interpolates, with a
forced nonzero d2.  The C2 x C2 analogue degenerates at E2 instead.
"""

from functor_homology.functors import base_change
from functor_homology.modules import trivial_module
from functor_homology.rings import (augmentation_map, cyclic_group_table,
                                    group_algebra, group_ring_map,
                                    product_group_table)
from functor_homology.spectral import grothendieck_ss


def show(ss, n_max):
    print("E2 page (rows q, columns p):")
    for q in range(n_max, -1, -1):
        print("   ", [ss.pages[2].get((p, q), 0) for p in range(n_max + 1)])
    print("abutment dims:", [ss.abutment.get(n, 0) for n in range(n_max + 1)])
    print("E2 equals the independent derived-functor dims:", ss.e2_matches)
    print("abutment equals L_n of the composite:", ss.abutment_matches)
    print("degenerates at E2:", ss.degenerates_at_2)
    print("filtration converges:", ss.converged())


print("== C2 inside C4, coefficients F2 ==")
R4 = group_algebra(2, cyclic_group_table(4), label="F2[C4]")
R2 = group_algebra(2, cyclic_group_table(2), label="F2[C2]")
F = base_change(group_ring_map(R4, R2, [0, 1, 0, 1]))
G = base_change(augmentation_map(R2))
ss = grothendieck_ss(F, G, trivial_module(R4), 4)
show(ss, 4)
d2s = {cell: m.data for cell, m in ss.diffs[2].items()
       if not m.is_zero() and sum(cell) <= 5}
print("nonzero d2 differentials at:", sorted(d2s))

print()
print("== C2 x C2, killing one factor ==")
RV = group_algebra(2, product_group_table(cyclic_group_table(2),
                                          cyclic_group_table(2)),
                   label="F2[C2xC2]")
FV = base_change(group_ring_map(RV, R2, [0, 1, 0, 1]))
ssv = grothendieck_ss(FV, G, trivial_module(RV), 4)
show(ssv, 4)
