"""Twisted Hecke algebras over exact cyclotomic integers.

The convolution algebra of (H, psi)-bi-equivariant functions on G is
commutative exactly when the induced representation Ind_H^G psi is
multiplicity-free, so its commutativity is an oracle for the (twisted)
Gelfand property that is independent of any double coset geometry.

All values live in Z[zeta_N] with N = lcm(p, q-1), represented by integer
coefficient vectors modulo the N-th cyclotomic polynomial.  No floats appear
anywhere; every verdict is an integer equality.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import lcm

import numpy as np

from .groups import (char_from_triple, chi, deltap_enumerate,
                     deltap_generators, deltap_size, h_block_data, h_generators,
                     psi)
from .matrices import BudgetError, Mat, gl_list, gl_order, mul_codes


def conductor(field):
    """Order of the value group of all characters in play: lcm(p, q-1)."""
    return lcm(field.p, max(field.q - 1, 1))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, constant first, computed by exact division of
    x^n - 1 by the product of Phi_d over proper divisors d."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(a, b):
    """Quotient of integer polynomials, b monic, remainder known to be zero."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        for j, bc in enumerate(b):
            a[i + j] -= c * bc
    assert not any(a), "division was not exact"
    return out


@lru_cache(maxsize=None)
def _reduction_matrix(n):
    """Row k (0 <= k < n) holds the coefficients of x^k modulo Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = np.zeros((n, deg), dtype=np.int64)
    cur = np.zeros(deg, dtype=np.int64)
    cur[0] = 1
    for k in range(n):
        rows[k] = cur
        top = cur[deg - 1]
        cur = np.roll(cur, 1)
        cur[0] = 0
        if top:
            # x * x^{deg-1}: replace x^deg by -(phi minus its leading term)
            cur -= top * np.array(phi[:deg], dtype=np.int64)
    return rows


class Cyclotomic:
    """An element of Z[zeta_N], as integer coordinates in the power basis."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N, coeffs=()):
        deg = len(cyclotomic_polynomial(N)) - 1
        acc = np.zeros(deg, dtype=np.int64)
        red = _reduction_matrix(N)
        for k, c in enumerate(coeffs):
            if c:
                acc += c * red[k % N]
        self.N = N
        self.coeffs = tuple(int(x) for x in acc)

    @classmethod
    def zero(cls, N):
        return cls(N)

    @classmethod
    def one(cls, N):
        return cls(N, (1,))

    @classmethod
    def root(cls, N, e=1):
        """zeta_N^e."""
        red = _reduction_matrix(N)
        new = cls.__new__(cls)
        new.N = N
        new.coeffs = tuple(int(x) for x in red[e % N])
        return new

    @classmethod
    def from_counts(cls, N, counts):
        """sum over e of counts[e] * zeta_N^e."""
        acc = np.asarray(counts, dtype=np.int64) @ _reduction_matrix(N)
        new = cls.__new__(cls)
        new.N = N
        new.coeffs = tuple(int(x) for x in acc)
        return new

    def _check(self, other):
        if not isinstance(other, Cyclotomic) or other.N != self.N:
            raise ValueError("mixed cyclotomic orders")
        return other

    def __add__(self, other):
        self._check(other)
        return Cyclotomic(self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return Cyclotomic(self.N, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Cyclotomic(self.N, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.N, [a * other for a in self.coeffs])
        self._check(other)
        deg = len(self.coeffs)
        prod = [0] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        red = _reduction_matrix(self.N)
        acc = np.zeros(deg, dtype=np.int64)
        phi = cyclotomic_polynomial(self.N)
        for k in range(len(prod) - 1, deg - 1, -1):
            c = prod[k]
            if c:
                for j, pc in enumerate(phi[:deg]):
                    prod[k - deg + j] -= c * pc
        return Cyclotomic(self.N, prod[:deg])

    __rmul__ = __mul__

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Cyclotomic) and other.N == self.N
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __repr__(self):
        return "Cyclotomic(%d; %s)" % (self.N, list(self.coeffs))


# -- indexed group setup ----------------------------------------------------

class HeckeSetup:
    """A finite group G (a direct product of matrix groups, stored as parallel
    stacks), the subgroup H as index list with character exponents mod N, and
    generator elements of H for double coset searches.
    """

    def __init__(self, field, stacks, gens, gen_exponents, N, label=""):
        self.field = field
        self.stacks = [np.ascontiguousarray(s) for s in stacks]
        self.size = self.stacks[0].shape[0]
        self.N = N
        self.label = label
        self.gens = gens
        self.gen_exponents = list(gen_exponents)
        q = field.q
        self._pows = []
        for s in self.stacks:
            d2 = s.shape[1] * s.shape[2]
            self._pows.append(q ** np.arange(d2, dtype=np.int64))
        self._stride = [int(q) ** (s.shape[1] * s.shape[2]) for s in self.stacks]
        codes = self.encode([s for s in self.stacks])
        self.index = {c: i for i, c in enumerate(codes.tolist())}
        self.h_indices = None
        self.h_exponents = None
        self._inv_stacks = None

    def encode(self, comp_arrays):
        """Injective int64 code for a batch of group elements."""
        total = None
        for s, pows, stride in zip(comp_arrays, self._pows, self._stride):
            flat = s.reshape(s.shape[0], -1).astype(np.int64) @ pows
            total = flat if total is None else total * stride + flat
        return total

    def lookup(self, comp_arrays):
        codes = self.encode(comp_arrays)
        idx = self.index
        return np.array([idx[c] for c in codes.tolist()], dtype=np.int64)

    def element(self, i):
        return tuple(Mat(self.field, s[i]) for s in self.stacks)

    @property
    def inv_stacks(self):
        if self._inv_stacks is None:
            out = []
            for s in self.stacks:
                out.append(np.stack([Mat(self.field, s[i]).inv().array
                                     for i in range(self.size)]))
            self._inv_stacks = out
        return self._inv_stacks


def shalika_hecke_setup(ctx, max_group_order=25000):
    """Indexed G = GL_{n+m}(q) with H = H_{n,m} and the twisted character psi."""
    f = ctx.field
    d = ctx.size
    total = gl_order(f.q, d)
    if total > max_group_order:
        raise BudgetError("|G| = %d exceeds the budget %d" % (total, max_group_order))
    stack = np.stack([g.array for g in gl_list(f, d)])
    N = conductor(f)
    gens = [(g,) for g in h_generators(ctx)]
    gen_exps = [int(psi(ctx, g).exponent * N) for g, in gens]
    setup = HeckeSetup(f, [stack], gens, gen_exps, N,
                       label="shalika n=%d m=%d q=%d" % (ctx.n, ctx.m, f.q))
    hstack, tr_a, dg_a, dk_a = h_block_data(f, ctx.n, ctx.m)
    setup.h_indices = setup.lookup([hstack])
    setup.h_exponents = np.array(
        [int(char_from_triple(ctx, (int(tr_a[i]), int(dg_a[i]), int(dk_a[i])),
                              "psi").exponent * N)
         for i in range(len(hstack))], dtype=np.int64)
    return setup


def deltap_hecke_setup(ctx, max_group_order=25000):
    """Indexed G = GL_n(q) x GL_{n+m}(q) with H = Delta P and the character chi."""
    f = ctx.field
    n, m = ctx.n, ctx.m
    small = gl_list(f, n)
    big = gl_list(f, n + m)
    total = len(small) * len(big)
    if total > max_group_order:
        raise BudgetError("|G| = %d exceeds the budget %d" % (total, max_group_order))
    s1 = np.stack([g.array for g in small]).repeat(len(big), axis=0)
    s2 = np.concatenate([np.stack([g.array for g in big])] * len(small))
    N = conductor(f)
    gens = deltap_generators(ctx)
    gen_exps = [int(chi(ctx, g).exponent * N) for g in gens]
    setup = HeckeSetup(f, [s1, s2], gens, gen_exps, N,
                       label="deltap n=%d m=%d q=%d" % (n, m, f.q))
    members = list(deltap_enumerate(ctx))
    assert len(members) == deltap_size(ctx)
    h1 = np.stack([p[0].array for p in members])
    h2 = np.stack([p[1].array for p in members])
    setup.h_indices = setup.lookup([h1, h2])
    setup.h_exponents = np.array([int(chi(ctx, p).exponent * N) for p in members],
                                 dtype=np.int64)
    return setup


# -- double cosets with character propagation -------------------------------

@dataclass
class CosetData:
    """Partition of G into H-H double cosets with propagated function values.

    coset_of[x] is the coset number of element x; value_of[x] the exponent of
    the normalized bi-equivariant function on that coset (meaningful only when
    the coset is compatible).  reps holds the least element index per coset.
    """

    reps: list
    coset_of: np.ndarray
    value_of: np.ndarray
    compatible: list


def double_cosets(setup):
    """Breadth-first partition of G into H-H double cosets.

    Within each coset the relation f(h x h') = psi(h) psi(h') f(x) propagates
    a tentative exponent from the basepoint; any conflict proves that no
    nonzero bi-equivariant function is supported there (incompatible coset).
    """
    f = setup.field
    size = setup.size
    coset_of = np.full(size, -1, dtype=np.int64)
    value_of = np.zeros(size, dtype=np.int64)
    reps = []
    compatible = []
    gen_arrays = [tuple(g.array for g in gen) for gen in setup.gens]
    N = setup.N

    for start in range(size):
        if coset_of[start] >= 0:
            continue
        cnum = len(reps)
        reps.append(start)
        ok = True
        coset_of[start] = cnum
        value_of[start] = 0
        frontier = np.array([start], dtype=np.int64)

        def absorb(idx, nv):
            # Assigns fresh elements and checks every edge for value
            # consistency, including duplicates inside the same batch.
            nonlocal ok
            seen = coset_of[idx] >= 0
            if (value_of[idx[seen]] != nv[seen]).any():
                ok = False
            fi, fv = idx[~seen], nv[~seen]
            if not len(fi):
                return fi
            order = np.argsort(fi, kind="stable")
            fi, fv = fi[order], fv[order]
            firsts = np.ones(len(fi), dtype=bool)
            firsts[1:] = fi[1:] != fi[:-1]
            group = np.maximum.accumulate(np.where(firsts, np.arange(len(fi)), 0))
            if (fv != fv[group]).any():
                ok = False
            fi, fv = fi[firsts], fv[firsts]
            coset_of[fi] = cnum
            value_of[fi] = fv
            return fi

        while len(frontier):
            batch = [s[frontier] for s in setup.stacks]
            vals = value_of[frontier]
            nxt = []
            for gen, ge in zip(gen_arrays, setup.gen_exponents):
                left = [mul_codes(f, g[None], b) for g, b in zip(gen, batch)]
                nxt.append(absorb(setup.lookup(left), (vals + ge) % N))
                right = [mul_codes(f, b, g[None]) for g, b in zip(gen, batch)]
                nxt.append(absorb(setup.lookup(right), (vals + ge) % N))
            frontier = np.unique(np.concatenate(nxt)) if nxt else frontier[:0]
        compatible.append(ok)
    return CosetData(reps=reps, coset_of=coset_of, value_of=value_of,
                     compatible=compatible)


def compatibility_direct(setup, rep_index):
    """Stabilizer test at g: whenever h g h' = g with h, h' in H, require
    psi(h) psi(h') = 1.  Independent of the propagation bookkeeping."""
    f = setup.field
    g = [s[rep_index] for s in setup.stacks]
    ginv = [Mat(f, c).inv().array for c in g]
    hidx = setup.h_indices
    hexp = setup.h_exponents
    exp_at = np.full(setup.size, -1, dtype=np.int64)
    exp_at[hidx] = hexp
    # h' = g^{-1} h^{-1} g must land in H; walk all h in H in one batch
    hinv = [s[hidx] for s in setup.inv_stacks]
    cand = [mul_codes(f, gi[None], mul_codes(f, hi, gg[None]))
            for gi, hi, gg in zip(ginv, hinv, g)]
    cand_idx = setup.lookup(cand)
    partner = exp_at[cand_idx]
    hit = partner >= 0
    return bool((((hexp[hit] + partner[hit]) % setup.N) == 0).all())


# -- the algebra ------------------------------------------------------------

@dataclass
class HeckeAlgebra:
    setup: object
    cosets: CosetData
    basis_cosets: list   # coset numbers of the compatible cosets, ascending
    dimension: int


def build_algebra(setup):
    cosets = double_cosets(setup)
    basis = [c for c, ok in enumerate(cosets.compatible) if ok]
    return HeckeAlgebra(setup=setup, cosets=cosets, basis_cosets=basis,
                        dimension=len(basis))


def structure_constants(algebra):
    """Integer count tensor C[r, i, j, e]: the number of x with
    f_i(x) = zeta^a, f_j(x^{-1} gamma_r) = zeta^b, a + b = e mod N.

    (f_i f_j)(gamma_r) is then sum_e C[r,i,j,e] zeta^e.  Values at the
    compatible representatives determine the products completely, since
    bi-equivariant functions vanish off the compatible cosets.
    """
    setup = algebra.setup
    cosets = algebra.cosets
    N = setup.N
    basis = algebra.basis_cosets
    B = len(basis)
    renum = np.full(len(cosets.reps), -1, dtype=np.int64)
    for pos, c in enumerate(basis):
        renum[c] = pos
    on_basis = renum[cosets.coset_of]            # -1 off the basis support
    vals = cosets.value_of
    inv_stacks = setup.inv_stacks
    counts = np.zeros((B, B, B, N), dtype=np.int64)
    f = setup.field
    support = np.nonzero(on_basis >= 0)[0]
    xs = [s[support] for s in inv_stacks]
    xi = on_basis[support]
    xv = vals[support]
    for rpos, c in enumerate(basis):
        rep = cosets.reps[c]
        g = [s[rep] for s in setup.stacks]
        prod = [mul_codes(f, a, gg[None]) for a, gg in zip(xs, g)]
        zidx = setup.lookup(prod)
        zj = on_basis[zidx]
        ok = zj >= 0
        e = (xv[ok] + vals[zidx[ok]]) % N
        np.add.at(counts[rpos], (xi[ok], zj[ok], e), 1)
    return counts


def is_commutative(setup):
    """(verdict, detail) for the convolution algebra of (G, H, psi).

    On failure the detail names the first basis pair and evaluation point with
    (f_i f_j)(gamma_r) != (f_j f_i)(gamma_r), as exact cyclotomic values.
    """
    algebra = build_algebra(setup)
    counts = structure_constants(algebra)
    red = _reduction_matrix(setup.N)
    coeffs = counts @ red   # (R, B, B, deg)
    sym = coeffs.transpose(0, 2, 1, 3)
    if np.array_equal(coeffs, sym):
        return True, {"dimension": algebra.dimension,
                      "cosets": len(algebra.cosets.reps)}
    bad = np.nonzero((coeffs != sym).any(axis=3))
    r, i, j = int(bad[0][0]), int(bad[1][0]), int(bad[2][0])
    lhs = Cyclotomic.from_counts(setup.N, counts[r, i, j])
    rhs = Cyclotomic.from_counts(setup.N, counts[r, j, i])
    return False, {"dimension": algebra.dimension, "pair": (i, j), "at": r,
                   "lhs": lhs, "rhs": rhs}


def hecke_report(setup):
    """Full oracle verdict: commutativity plus the dimension cross-check
    against the direct stabilizer count of compatible cosets."""
    algebra = build_algebra(setup)
    direct = sum(1 for c in range(len(algebra.cosets.reps))
                 if compatibility_direct(setup, algebra.cosets.reps[c]))
    commutative, detail = is_commutative(setup)
    return {"label": setup.label, "group_order": setup.size,
            "double_cosets": len(algebra.cosets.reps),
            "dimension": algebra.dimension, "compatible_direct": direct,
            "dimension_agrees": direct == algebra.dimension,
            "commutative": commutative, "detail": detail,
            "ok": commutative and direct == algebra.dimension}
