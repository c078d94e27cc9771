"""Generator-level evidence that the quotient algebras do not depend on q.

Each catalogued identity rebuilds generators at q from their q = 0 limits
(or the reverse).  Series identities truncate a binomial expansion at L and
their residuals fall geometrically in L.
"""
import numpy as np

from soqlab.qlimit import CATALOG, PRINTED_VARIANTS, build_limit_pair, continuity_sweep, run_catalog, verify_identity
from soqlab.scalars import QParams

q = 0.5
params = QParams(q, d=12, margin=4)
print(f"q={q}, d={params.d}, tol={params.tol:.1e}")
for res in run_catalog(q, params, L=12):
    slope = "" if res.decay_slope is None else f"  slope {res.decay_slope:.3f} (predicted {res.predicted_slope:.3f})"
    print(f"  {res.identity:20s} residual {res.residual:.1e}{slope}")

pair = build_limit_pair("D4", 3, q, params)
for name in PRINTED_VARIANTS:
    print(f"  {name:20s} residual {verify_identity(name, pair, 12, params):.2f}  (as printed; expected to fail)")

grid = np.round(np.arange(0.3, 0.701, 0.05), 2)
for fam, index in (("D4", 3), ("B", 2)):
    t = continuity_sweep(fam, index, grid, params)
    print(f"  continuity {fam}: Lipschitz ratio {t.lipschitz_ratio:.2f}, worst jump/median {t.max_jump_ratio:.2f}")
print(f"{len(CATALOG)} identities catalogued")
