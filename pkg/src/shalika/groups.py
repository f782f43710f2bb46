"""Shalika subgroups H_{n,m} and H' = tau(H), their characters, and the
diagonal-parabolic pair Delta P with its determinant characters.

An element of H looks like

    [ g  u  a ]
    [    g  b ]      g in GL_n,  k in GL_{m-n},  u in Mat_n,  a, b in Mat_{n,m-n}
    [       k ]

and the character data of h is the triple (tr(g^{-1} u), det g, det k): the
first coordinate feeds the additive character, the other two the optional
multiplicative twists.  The triple map is a homomorphism into
F_q x F_q^x x F_q^x, which the coset machinery exploits heavily.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FqElem, UnityRoot, additive_character, mult_character
from .matrices import (Mat, all_matrices, gl_generators, gl_list, gl_order,
                       tau, w)


@dataclass(frozen=True)
class ShalikaContext:
    """Parameters (n, m, field) plus twist data (a1, a2, c).

    a1, a2 are exponents mod (q-1) for the determinant characters on the two
    Levi factors; c is the nonzero additive twist.  a1 = a2 = 0 gives the
    regular (non-twisted) Shalika character.
    """

    field: object
    n: int
    m: int
    a1: int = 0
    a2: int = 0
    c: int = 1

    def __post_init__(self):
        if not 0 <= self.n <= self.m:
            raise ValueError("need 0 <= n <= m")
        q = self.field.q
        c = self.c % q if self.field.k == 1 else self.c
        if not 0 < c < q:
            raise ValueError("additive twist c must be a nonzero field code")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a1", self.a1 % max(q - 1, 1))
        object.__setattr__(self, "a2", self.a2 % max(q - 1, 1))

    @property
    def size(self):
        return self.n + self.m

    def untwisted(self):
        return ShalikaContext(self.field, self.n, self.m)


@dataclass
class HDecomposition:
    """The blocks of an element of H_{n,m}."""

    g: Mat
    u: Mat
    a: Mat
    b: Mat
    k: Mat


def h_size(ctx):
    q = ctx.field.q
    n, m = ctx.n, ctx.m
    return gl_order(q, n) * gl_order(q, m - n) * q ** (n * n + 2 * n * (m - n))


def h_assemble(ctx, g, u, a, b, k):
    f = ctx.field
    n, m = ctx.n, ctx.m
    z1 = Mat.zeros(f, n, n)
    z2 = Mat.zeros(f, m - n, n)
    return Mat.assemble(f, [[g, u, a], [z1, g, b], [z2, z2, k]])


def h_contains(ctx, x):
    """Return the block decomposition if x is in H_{n,m}, else None."""
    n, m = ctx.n, ctx.m
    if x.rows != n + m or x.cols != n + m:
        raise ValueError("expected a %d x %d matrix" % (n + m, n + m))
    arr = x.array
    if arr[n:2 * n, 0:n].any() or arr[2 * n:, 0:2 * n].any():
        return None
    if (arr[0:n, 0:n] != arr[n:2 * n, n:2 * n]).any():
        return None
    g = x.block(0, n, 0, n)
    k = x.block(2 * n, n + m, 2 * n, n + m)
    if not g.is_invertible() or not k.is_invertible():
        return None
    return HDecomposition(g=g, u=x.block(0, n, n, 2 * n), a=x.block(0, n, 2 * n, n + m),
                          b=x.block(n, 2 * n, 2 * n, n + m), k=k)


def hprime_contains(ctx, x):
    return h_contains(ctx, tau(x, ctx.n, ctx.m)) is not None


def h_enumerate(ctx):
    """All of H, lexicographic in (g, k, u, a, b).  Deterministic order."""
    f = ctx.field
    n, m = ctx.n, ctx.m
    for g in gl_list(f, n):
        for k in gl_list(f, m - n):
            for u in all_matrices(f, n):
                for a in all_matrices(f, n, m - n):
                    for b in all_matrices(f, n, m - n):
                        yield h_assemble(ctx, g, u, a, b, k)


def hprime_enumerate(ctx):
    for h in h_enumerate(ctx):
        yield tau(h, ctx.n, ctx.m)


@lru_cache(maxsize=None)
def h_block_data(field, n, m):
    """Stacked H elements plus their character triples, in enumeration order.

    Returns (stack, tr, dg, dk) as numpy arrays; cached per (field, n, m)
    since the data is twist-independent.  This is the hot-loop payload for
    the coset machinery.
    """
    ctx = ShalikaContext(field, n, m)
    count = h_size(ctx)
    d = n + m
    stack = np.zeros((count, d, d), dtype=np.int16)
    tr_a = np.zeros(count, dtype=np.int16)
    dg_a = np.zeros(count, dtype=np.int16)
    dk_a = np.zeros(count, dtype=np.int16)
    i = 0
    for g in gl_list(field, n):
        ginv = g.inv()
        dg = g.det().code
        for k in gl_list(field, m - n):
            dk = k.det().code
            for u in all_matrices(field, n):
                trv = _trace_code(field, (ginv @ u).array)
                for a in all_matrices(field, n, m - n):
                    for b in all_matrices(field, n, m - n):
                        arr = stack[i]
                        arr[0:n, 0:n] = g.array
                        arr[n:2 * n, n:2 * n] = g.array
                        arr[0:n, n:2 * n] = u.array
                        arr[0:n, 2 * n:] = a.array
                        arr[n:2 * n, 2 * n:] = b.array
                        arr[2 * n:, 2 * n:] = k.array
                        tr_a[i], dg_a[i], dk_a[i] = trv, dg, dk
                        i += 1
    assert i == count
    stack.setflags(write=False)
    return stack, tr_a, dg_a, dk_a


def _trace_code(field, arr):
    out = 0
    for i in range(arr.shape[0]):
        out = field.add(out, int(arr[i, i]))
    return out


# -- character evaluation ---------------------------------------------------

def h_triple(ctx, h):
    """(tr(g^{-1}u), det g, det k) as field codes; the full character data of h."""
    dec = h_contains(ctx, h)
    if dec is None:
        raise ValueError("matrix is not in H_{n,m}")
    trv = _trace_code(ctx.field, (dec.g.inv() @ dec.u).array) if ctx.n else 0
    return (trv, dec.g.det().code if ctx.n else 1,
            dec.k.det().code if ctx.m > ctx.n else 1)


def triple_mul(field, t1, t2):
    return (field.add(t1[0], t2[0]), field.mul(t1[1], t2[1]), field.mul(t1[2], t2[2]))


def triple_inv(field, t):
    return (field.neg(t[0]), field.inv(t[1]), field.inv(t[2]))


def char_from_triple(ctx, triple, flavor="psi"):
    """Evaluate psi (or psi_u) from a character triple."""
    trv, dg, dk = triple
    val = additive_character(FqElem(ctx.field, trv), ctx.c)
    if flavor == "psi":
        if ctx.n and ctx.a1:
            val = val * mult_character(FqElem(ctx.field, dg), ctx.a1)
        if ctx.m > ctx.n and ctx.a2:
            val = val * mult_character(FqElem(ctx.field, dk), ctx.a2)
    elif flavor != "psi_u":
        raise ValueError("unknown character flavor %r" % (flavor,))
    return val


def psi(ctx, h):
    """The twisted Shalika character of h in H."""
    return char_from_triple(ctx, h_triple(ctx, h), "psi")


def psi_u(ctx, h):
    """psi restricted to the unipotent data only (trivial on the Levi part)."""
    return char_from_triple(ctx, h_triple(ctx, h), "psi_u")


def psi_tau(ctx, hp):
    """The character psi o tau on H' = tau(H)."""
    return psi(ctx, tau(hp, ctx.n, ctx.m))


def action_character(ctx, h1, h2, flavor="psi"):
    """psi(tau(h1) h2^{-1}) for h1 in H', h2 in H: the admissibility pairing."""
    t1 = h_triple(ctx, tau(h1, ctx.n, ctx.m))
    t2 = h_triple(ctx, h2)
    return char_from_triple(ctx, triple_mul(ctx.field, t1, triple_inv(ctx.field, t2)),
                            flavor)


# -- generators -------------------------------------------------------------

def h_generators(ctx):
    """Levi generators embedded diagonally plus one transvection per unipotent
    coordinate; a small generating set for orbit breadth-first searches."""
    f = ctx.field
    n, m = ctx.n, ctx.m
    d = n + m
    gens = []
    for g in gl_generators(f, n):
        gens.append(h_assemble(ctx, g, Mat.zeros(f, n), Mat.zeros(f, n, m - n),
                               Mat.zeros(f, n, m - n), Mat.identity(f, m - n)))
    for k in gl_generators(f, m - n):
        gens.append(h_assemble(ctx, Mat.identity(f, n), Mat.zeros(f, n),
                               Mat.zeros(f, n, m - n), Mat.zeros(f, n, m - n), k))
    for i in range(n):
        for j in range(n):
            gens.append(_transvection(f, d, i, n + j))
    for i in range(n):
        for j in range(m - n):
            gens.append(_transvection(f, d, i, 2 * n + j))
            gens.append(_transvection(f, d, n + i, 2 * n + j))
    return gens


def _transvection(field, d, i, j):
    arr = np.eye(d, dtype=np.int16)
    arr[i, j] = 1
    return Mat(field, arr)


def hprime_generators(ctx):
    return [tau(g, ctx.n, ctx.m) for g in h_generators(ctx)]


# -- Gelfand-Kazhdan conjugators -------------------------------------------

def gk_conjugators(ctx):
    """The fixed pair (a, b): a = diag(w_{2n}, I_{m-n}), b = diag(I_n, -I_n, I_{m-n})."""
    f = ctx.field
    n, m = ctx.n, ctx.m
    a = Mat.diag_blocks(f, [w(f, 2 * n), Mat.identity(f, m - n)])
    bneg = Mat.identity(f, n).scalar_mul(f.neg(1))
    b = Mat.diag_blocks(f, [Mat.identity(f, n), bneg, Mat.identity(f, m - n)])
    return a, b


def verify_gk_conditions(ctx, samples=200, seed=0, max_subgroup_order=10 ** 6):
    """Check the three conjugator conditions, exhaustively over H when it is
    small enough and on seeded random samples otherwise.

    Conditions: tau(g) = a g^t a^{-1} for all g; b tau(h'^{-1}) b^{-1} in H and
    psi of it equals psi(tau(h')) for all h' in H'.
    """
    import random

    f = ctx.field
    n, m = ctx.n, ctx.m
    a, b = gk_conjugators(ctx)
    ainv, binv = a.inv(), b.inv()
    rng = random.Random(seed)
    failures = []
    checked_g = 0
    for _ in range(samples):
        g = random_matrix(f, n + m, n + m, rng)
        if tau(g, n, m) != a @ g.T @ ainv:
            failures.append(("tau-conjugation", g.to_text()))
        checked_g += 1

    if h_size(ctx) <= max_subgroup_order and h_size(ctx) <= max(samples, 10 ** 4):
        hs = list(h_enumerate(ctx))
    else:
        hs = [random_h(ctx, rng) for _ in range(samples)]
    checked_h = 0
    for h in hs:
        hp = tau(h, n, m)
        cand = b @ tau(hp.inv(), n, m) @ binv
        if h_contains(ctx, cand) is None:
            failures.append(("b-conjugation-membership", hp.to_text()))
        elif psi(ctx, cand) != psi_tau(ctx, hp):
            failures.append(("b-conjugation-character", hp.to_text()))
        checked_h += 1
    return {"checked_g": checked_g, "checked_h": checked_h, "failures": failures,
            "ok": not failures}


# -- random sampling --------------------------------------------------------

def random_matrix(field, rows, cols, rng):
    arr = np.array([[rng.randrange(field.q) for _ in range(cols)] for _ in range(rows)],
                   dtype=np.int16).reshape(rows, cols)
    return Mat(field, arr)


def random_gl(field, n, rng):
    while True:
        m = random_matrix(field, n, n, rng)
        if m.is_invertible():
            return m


def random_h(ctx, rng):
    f = ctx.field
    n, m = ctx.n, ctx.m
    return h_assemble(ctx, random_gl(f, n, rng), random_matrix(f, n, n, rng),
                      random_matrix(f, n, m - n, rng), random_matrix(f, n, m - n, rng),
                      random_gl(f, m - n, rng))


def random_hprime(ctx, rng):
    return tau(random_h(ctx, rng), ctx.n, ctx.m)


# -- the Delta P pair -------------------------------------------------------

@dataclass(frozen=True)
class DeltaPContext:
    """The pair (GL_n x GL_{n+m}, Delta P) with a determinant character chi.

    Elements of the ambient group are pairs (g1, x) of matrices; Delta P is
    the subgroup with x = [[g1, u], [0, g2]].  chi has exponents (x1, x2)
    against the fixed field generator, trivial on the unipotent part by
    construction.
    """

    field: object
    n: int
    m: int
    x1: int = 0
    x2: int = 0

    def __post_init__(self):
        if not (self.n >= 0 and self.m >= 0):
            raise ValueError("need n, m >= 0")
        q = self.field.q
        object.__setattr__(self, "x1", self.x1 % max(q - 1, 1))
        object.__setattr__(self, "x2", self.x2 % max(q - 1, 1))

    @property
    def size(self):
        return self.n + self.m


def deltap_size(ctx):
    q = ctx.field.q
    return gl_order(q, ctx.n) * gl_order(q, ctx.m) * q ** (ctx.n * ctx.m)


def deltap_contains(ctx, pair):
    """Membership for a pair (g1, x); returns (g1, u, g2) blocks or None."""
    g1, x = pair
    n, m = ctx.n, ctx.m
    if g1.rows != n or x.rows != n + m:
        raise ValueError("malformed pair for Delta P_{%d,%d}" % (n, m))
    if x.array[n:, 0:n].any():
        return None
    if (x.array[0:n, 0:n] != g1.array).any():
        return None
    g2 = x.block(n, n + m, n, n + m)
    if not g1.is_invertible() or not g2.is_invertible():
        return None
    return g1, x.block(0, n, n, n + m), g2


def deltap_enumerate(ctx):
    f = ctx.field
    n, m = ctx.n, ctx.m
    z = Mat.zeros(f, m, n)
    for g1 in gl_list(f, n):
        for g2 in gl_list(f, m):
            for u in all_matrices(f, n, m):
                yield (g1, Mat.assemble(f, [[g1, u], [z, g2]]))


def chi(ctx, pair):
    dec = deltap_contains(ctx, pair)
    if dec is None:
        raise ValueError("pair is not in Delta P")
    g1, _, g2 = dec
    val = UnityRoot(0)
    if ctx.n and ctx.x1:
        val = val * mult_character(g1.det(), ctx.x1)
    if ctx.m and ctx.x2:
        val = val * mult_character(g2.det(), ctx.x2)
    return val


def deltap_generators(ctx):
    f = ctx.field
    n, m = ctx.n, ctx.m
    gens = []
    for g in gl_generators(f, n):
        gens.append((g, Mat.diag_blocks(f, [g, Mat.identity(f, m)])))
    for g in gl_generators(f, m):
        gens.append((Mat.identity(f, n), Mat.diag_blocks(f, [Mat.identity(f, n), g])))
    for i in range(n):
        for j in range(m):
            gens.append((Mat.identity(f, n), _transvection(f, n + m, i, n + j)))
    return gens


def deltap_character_coverage(ctx, max_order=100000):
    """How many characters of Delta P are trivial on the unipotent part, and how
    many of them the determinant family (x1, x2) reaches.

    Characters trivial on the unipotent part factor through GL_n x GL_m, so
    their number is the product of the abelianization orders; the determinant
    family contributes (q-1)^2 of them (det is onto).  Reported, not assumed
    equal: the abelianization can be strictly larger for tiny groups.
    """
    q = ctx.field.q
    ab_n = _gl_abelianization_order(ctx.field, ctx.n, max_order)
    ab_m = _gl_abelianization_order(ctx.field, ctx.m, max_order)
    det_family = max(q - 1, 1) ** ((ctx.n > 0) + (ctx.m > 0))
    return {"det_family": det_family, "all_unipotent_trivial": ab_n * ab_m,
            "exhaustive": det_family == ab_n * ab_m}


def _gl_abelianization_order(field, n, max_order):
    if n == 0:
        return 1
    total = gl_order(field.q, n)
    if total > max_order:
        raise ValueError("GL_%d(F_%d) exceeds the abelianization budget" % (n, field.q))
    gens = gl_generators(field, n)
    base = []
    for a in gens:
        for b in gens:
            base.append(a @ b @ a.inv() @ b.inv())
    derived = _normal_closure(base, gens)
    return total // len(derived)


def _normal_closure(base, gens):
    """Subgroup generated by base, closed under conjugation by gens."""
    conj = [(g, g.inv()) for g in gens]
    base = list(base)
    while True:
        elems = _mulclose(base)
        grown = False
        for x in list(elems.values()):
            for g, gi in conj:
                y = g @ x @ gi
                if y.key() not in elems:
                    base.append(y)
                    grown = True
        if not grown:
            return elems


def _mulclose(gens):
    elems = {}
    frontier = list(gens)
    for g in frontier:
        elems.setdefault(g.key(), g)
    frontier = list(elems.values())
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y.key() not in elems:
                    elems[y.key()] = y
                    new.append(y)
        frontier = new
    return elems
