"""Highest weight vectors of the quotient space and the branching count.

For every weight (l1, l2) the ladder construction produces l1 - l2 + 1
vectors.  Their images on the vacuum are independent, and that number
matches the multiplicity of the trivial SO(N-2) representation inside the
SO(N) irreducible with highest weight (l1, l2, 0, ...).
"""
from soqlab.branching import trivial_multiplicity
from soqlab.quea import HighestWeight, PolyEvaluator, build_hw_vectors, linear_independence, verify_hw

q, N = 0.5, 7
weights = [(l1, l2) for l1 in range(4) for l2 in range(l1 + 1)]
ev = PolyEvaluator(N, q, max_len=6, interior=3)

print(f"N={N}, q={q}")
print(" weight   vectors  rank  branching  worst residual")
for l1, l2 in weights:
    hw = HighestWeight(N, (l1, l2))
    xs = build_hw_vectors(l1, l2, N, q)
    worst = max(max(r.e_residuals + r.k_residuals) for r in (verify_hw(x, hw, ev, 1e-10) for x in xs))
    rank = linear_independence(xs, ev)
    m = trivial_multiplicity((l1, l2, 0), N)
    print(f" ({l1},{l2})    {len(xs):5d}  {rank:4d}  {m:9d}  {worst:.1e}")
