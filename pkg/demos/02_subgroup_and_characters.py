# The block subgroup H_{n,m} inside GL_{n+m}(F_q), its character psi, and
# the twisted transpose tau that relates H to its mirror H'.

from shalika.field import Field
from shalika.matrices import tau
from shalika.groups import (ShalikaContext, h_contains, h_enumerate, h_size,
                            hprime_enumerate, psi, psi_tau)

ctx = ShalikaContext(Field(2), n=1, m=2)
print("group: GL_%d(F_%d)" % (ctx.n + ctx.m, ctx.field.q))
print("|H_{%d,%d}| = %d" % (ctx.n, ctx.m, h_size(ctx)))

# Elements of H have the shape [[g, u, a], [0, g, b], [0, 0, k]] with the
# same invertible g repeated on the diagonal.  h_contains recovers the
# blocks or rejects the matrix.
h = next(iter(h_enumerate(ctx)))
print("\na member of H:")
print(h.to_text())
dec = h_contains(ctx, h)
print("blocks: g =", dec.g.to_text(), " k =", dec.k.to_text())

# psi is multiplicative on H: it only sees tr(g^{-1} u) plus determinant
# twists, and all of those are conjugation-stable block data.
hs = list(h_enumerate(ctx))
a, b = hs[3], hs[7]
print("\npsi(a) psi(b) == psi(ab):",
      psi(ctx, a) * psi(ctx, b) == psi(ctx, a @ b))

# tau is an involutive anti-twist: H' = tau(H), and psi_tau = psi o tau is
# the matching character on H'.
hp = {m_.key() for m_ in hprime_enumerate(ctx)}
image = {tau(m_, ctx.n, ctx.m).key() for m_ in h_enumerate(ctx)}
print("tau(H) == H':", hp == image)

hp0 = next(iter(hprime_enumerate(ctx)))
print("psi_tau on H' sample:", psi_tau(ctx, hp0))
