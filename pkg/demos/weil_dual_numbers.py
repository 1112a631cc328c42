"""Weil restriction of the dual numbers and of a few neighbours.

Run: python3 demos/weil_dual_numbers.py
"""
from artinhodge.algebra import build_algebra, dual_numbers, format_poly, presentation
from artinhodge.scalars import QQI
from artinhodge.weil import weil_restrict_algebra


def show(label, R):
    W = weil_restrict_algebra(R)
    B = W.algebra
    names = B.presentation.var_names
    print(f"{label}: dim {R.dim} over Q(i) -> dim {B.dim} over Q")
    print("  relations:", ", ".join(format_poly(r, names) for r in W.relations))
    print("  basis:    ", " ".join(B.basis_names()))
    print(f"  m^{B.nilpotency_index} = 0")


if __name__ == "__main__":
    show("Q(i)[z]/(z^2)", dual_numbers(QQI, 2, "z"))
    show("Q(i)[z]/(z^3)", dual_numbers(QQI, 3, "z"))
    show("Q(i)[x,y]/(x^2, y^2)",
         build_algebra(presentation(QQI, 2, [{(2, 0): 1}, {(0, 2): 1}], 3, ("x", "y"))))
    # R (x) conj(R) has dimension (dim R)^2, and so does the restriction
