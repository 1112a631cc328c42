"""Mixed Hodge structures of three configurations of rational curves.

wedge:    two lines through one point
banana:   two conics meeting in two points (a loop in the dual graph)
triangle: three lines, pairwise meeting

Run: python3 demos/curve_configurations.py
"""
from artinhodge.algebra import dual_numbers
from artinhodge.scalars import QQI
from artinhodge.snc import (DEMOS, assemble_mhs, banana_ambient, betti_numbers,
                            verify_theorem_free_singular, weight_ss)

if __name__ == "__main__":
    R = dual_numbers(QQI, 2, "e")
    for name, build in DEMOS.items():
        M = build(R)
        betti = betti_numbers(M)[:3]
        print(f"{name}: betti {betti}, euler {M.euler_characteristic()}")
        for k in range(3):
            S = assemble_mhs(M, k)
            if S.rank:
                print(f"  H^{k}: weights {S.weights()}, hodge numbers {S.hodge_numbers()}")
        ss = weight_ss(M, 0)
        print(f"  weight spectral sequence: E1 degenerate {ss.degenerates_e1}, "
              f"E2 degenerate {ss.degenerates_e2}")

    rep = verify_theorem_free_singular(DEMOS["banana"](R), banana_ambient(), 1, 1)
    print(f"banana inside a surface: coker of pullback free {rep.coker_free}, "
          f"image meets W_1 trivially {rep.weight_transverse}, rank {rep.rank}")
