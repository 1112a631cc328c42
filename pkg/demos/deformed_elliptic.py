"""A first-order deformation of an elliptic curve's Hodge structure.

Over R = Q(i)[e]/(e^2) the line F^1 is spanned by (1, i + e).  After Weil
restriction the conjugation exists and splits H into H^{1,0} and H^{0,1}.

Run: python3 demos/deformed_elliptic.py
"""
from artinhodge.algebra import dual_numbers
from artinhodge.hodge import (MixedHodgeStructure, hodge_decomposition, verify_mhs,
                              weil_restrict_structure)
from artinhodge.scalars import QQI, Gaussian

if __name__ == "__main__":
    R = dual_numbers(QQI, 2, "e")
    i = Gaussian(0, 1)
    H = MixedHodgeStructure.from_generators(2, R, {1: [[1, 0, i, 1]]}, weight=1)
    print("over R:", verify_mhs(H).as_dict())
    print("graded ranks:", H.graded_ranks())

    Hw = weil_restrict_structure(H)
    print(f"restricted: H has dimension {Hw.H.dim} over Q, algebra dim {Hw.algebra.dim}")
    dec = hodge_decomposition(Hw)
    for (p, q), P in sorted(dec.pieces.items()):
        swapped = Hw.sigma_sub(P) == dec.pieces[(q, p)]
        print(f"  H^({p},{q}): complex rank {dec.ranks[(p, q)]}, conjugate is H^({q},{p}): {swapped}")

    flat = MixedHodgeStructure.from_generators(2, R, {1: [[1, 0, 1, 0]]}, weight=1)
    print("a real line as F^1 fails:", verify_mhs(flat).failures())
