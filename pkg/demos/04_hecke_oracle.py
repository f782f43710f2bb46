# The exact convolution-algebra oracle: structure constants over a
# cyclotomic integer ring, the compatibility screen, and commutativity.

from shalika.field import Field
from shalika.groups import ShalikaContext
from shalika.hecke import (Cyclotomic, build_algebra, conductor,
                           cyclotomic_polynomial, hecke_report, is_commutative,
                           shalika_hecke_setup, structure_constants)

f = Field(3)

# Character values live in Z[zeta_N] with N = lcm(p, q - 1); for q = 3 that
# is the sixth cyclotomic ring, reduced modulo Phi_6 = x^2 - x + 1.
N = conductor(f)
print("conductor:", N, " Phi_%d =" % N, cyclotomic_polynomial(N))
z = Cyclotomic.root(N, 1)
print("zeta^6 == 1:", (z * z * z * z * z * z) == Cyclotomic.one(N))

# Build the full double-coset decomposition of G relative to (H', H) and
# the character-weighted convolution algebra on the compatible cosets.
ctx = ShalikaContext(f, n=1, m=1)
setup = shalika_hecke_setup(ctx)
algebra = build_algebra(setup)
print("\n|G| =", len(setup.stacks[0]) if setup.stacks[0].ndim == 3
      else setup.stacks[0].shape[0])
print("double cosets:", len(algebra.cosets.reps))
print("compatible basis dimension:", algebra.dimension)

# Structure constants are exact integer count tensors, one slice per power
# of zeta.  Commutativity is a symmetry of that tensor, checked exactly.
consts = structure_constants(algebra)
print("structure constant tensor shape:", consts.shape)
flat, detail = is_commutative(setup)
print("commutative:", flat, "| dimension cross-check:",
      detail["dimension"] == algebra.dimension)

# The one-call report used by the campaign.
rep = hecke_report(setup)
print("\nreport:", {k: rep[k] for k in ("group_order", "double_cosets",
                                        "dimension", "commutative", "ok")})
