"""Integer K-theory witnesses: winding numbers and index-map defects.

u_k has determinant t, so winding 1.  Lifting t (x) q^N (x) ... (x) S*^j to an
isometry leaves a defect projection whose trace is the image of the index
map: 1 in the generic case, 2 for the odd-dimensional torsion case.
"""
from soqlab.ktheory import boundary_witness, build_uk, winding
from soqlab.scalars import QParams

for d in (8, 16):
    params = QParams(0.5, d, margin=min(6, d // 2))
    print(f"d={d}")
    print("  winding(u_k), k=1..5:", [winding(build_uk(k, params.with_dims(8, 0))) for k in range(1, 6)])
    for case, n, k in [("A", 3, 2), ("A", 3, 3), ("B", 2, None), ("D", 2, None), ("D", 3, None)]:
        rep = boundary_witness(case, n, k, params)
        extra = f"  ideal membership {rep.ideal_membership}" if case == "D" else ""
        print(f"  case {case} n={n} k={rep.k}: tr(1-Y*Y)={rep.defect_minus:g} tr(1-YY*)={rep.defect_plus:g} "
              f"difference {rep.defect_difference:g}{extra}")
