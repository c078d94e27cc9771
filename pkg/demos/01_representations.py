"""Build the quotient representations of SO_q(5) and check their relations.

Each pi_{omega_k} is a convolution of a circle character with elementary
representations pulled back from SU_q(2).  The last row of the fundamental
matrix generates the quotient space; its first few entries vanish exactly.
"""
from soqlab.repbuilder import build_rmatrix, check_frt, k_range, pi_omega, vanishing_pattern
from soqlab.scalars import QParams
from soqlab.weyl import omega_k

q = 0.5
params = QParams(q, d=12, margin=4)
R = build_rmatrix(5, q)

print(f"SO_q(5), q={q}, cut-off d={params.d}, tol={params.tol:.1e}")
for k in k_range("B", 2):
    word = omega_k("B", 2, k)
    rep = check_frt(pi_omega("B", 2, k, params), R, params)
    van = vanishing_pattern("B", 2, k, params.with_dims(8, 2))
    zeros = f"v^5_1..v^5_{van.zero_bound} = 0: {van.zeros_exact}" if van.zero_bound else "no forced zeros"
    print(f"  k={k} omega={str(word):8s} FRT {rep.frt_max:.1e}  unitarity {rep.unitarity_max:.1e}  "
          f"{zeros:28s}  v^5_{van.eigen_index} e0 = {van.eigen_sign:+d} t e0")
