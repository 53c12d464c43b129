"""The dictionary between Weil-Deligne data and Frobenius modules.

Unramified data (and chains over unramified pieces) are determined by
geometric Frobenius eigenvalue valuations, which match module slopes with
no sign change.  The dictionary round-trips on canonical forms, preserves
the Newton number, and the nilpotent chain structure appears as slope
shifts by [L:Q_p] per twist.
"""

from fractions import Fraction

from wadm import (
    FieldData,
    SteinbergChain,
    Unramified,
    WDRep,
    block_decompose,
    f_semisimplify,
    mod_of_wd,
    t_N,
    wd_of_mod,
)

field = FieldData(p=3, e=1, f=2)

rep = WDRep(field, (Unramified(Fraction(1, 2), 2, (2,)), Unramified(-1, 1)))
print("datum:", [f"val={p.val} mult={p.mult} jordan={p.jordan}" for p in rep.parts])

module = mod_of_wd(rep)
print("module slopes:", [(str(b.slope), b.mult) for b in module.blocks])
print("t_N =", t_N(module))
print("round trip equals canonical form?", wd_of_mod(module) == rep.canonical())

print("\nF-semisimplification flattens Jordan data:")
ss = f_semisimplify(rep)
print("  before:", rep.parts[0].jordan, " after:", ss.parts[0].jordan)
print("  block decomposition unchanged?", block_decompose(ss) == block_decompose(rep))

# A chain datum: successive geometric valuations differ by [L:Q_p].
chain = WDRep(field, (SteinbergChain(base_val=0, piece_dim=1, length=3),))
chain_module = mod_of_wd(chain)
print("\nchain of length 3 at base valuation 0 over a degree-2 field:")
print("  module slopes:", [str(b.slope) for b in chain_module.blocks])
print("  blocks (t_N, dim):", [(str(tn), d) for tn, d in block_decompose(chain)])
print("  dimensions sum to", chain.dimension)
