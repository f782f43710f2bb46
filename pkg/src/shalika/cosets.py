"""Double cosets H' \\ G / H: representatives, admissibility, invariance.

The representative family is gamma = diag(Y, I_m) * sigma * diag(I_n, Z, I_{m-n})
with Y, Z in GL_n and sigma a permutation matrix indexed by a 4-tuple
(k1, k2, t, s) from the constraint set Omega.

Admissibility is decided by full stabilizer enumeration: for every h2 in H
the partner h1 = gamma h2 gamma^{-1} either lies in H' (giving a stabilizer
pair) or not.  The pairing character psi(tau(h1) h2^{-1}) must be 1 on every
stabilizer pair.  Invariance witnesses are found the same way with target
tau(gamma) instead of gamma.  The scan over H is vectorized and its result is
twist-independent, so one pass serves every character twist.
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .groups import (ShalikaContext, char_from_triple, h_block_data,
                     h_generators, h_size, hprime_generators, triple_inv, triple_mul)
from .matrices import (BudgetError, Mat, gl_list, gl_order, mul_codes, tau, w)


# -- Omega and the representative family ------------------------------------

@dataclass(frozen=True, order=True)
class OmegaIndex:
    k1: int
    k2: int
    t: int
    s: int


def omega_contains(n, m, idx):
    k1, k2, t, s = idx.k1, idx.k2, idx.t, idx.s
    return (0 <= k1 <= n and 0 <= k2 <= n and t >= 0 and s >= 0
            and k2 <= t + k1 <= n and k1 <= s + k2 <= n and s + t <= m - n)


def omega_enumerate(n, m):
    """All index tuples in Omega, lexicographic in (k1, k2, t, s)."""
    out = []
    for k1 in range(n + 1):
        for k2 in range(n + 1):
            for t in range(n + 1):
                for s in range(n + m + 1):
                    idx = OmegaIndex(k1, k2, t, s)
                    if omega_contains(n, m, idx):
                        out.append(idx)
    return out


def sigma_matrix(field, n, m, idx):
    """The permutation part sigma_{k1,k2,t,s} of the coset representative."""
    if not omega_contains(n, m, idx):
        raise ValueError("index %r outside Omega for (n, m) = (%d, %d)" % (idx, n, m))
    k1, k2, t, s = idx.k1, idx.k2, idx.t, idx.s
    d = n + m
    row_sizes = [k1, n - t - k1, t, n - k2 - s, k2, s,
                 m - n - s - t, k2 - k1 + s, k1 - k2 + t]
    col_sizes = [k2, n - t - k1, k1 - k2 + t, n - k2 - s, k1, k2 - k1 + s,
                 m - n - s - t, s, t]
    ro = np.cumsum([0] + row_sizes)
    co = np.cumsum([0] + col_sizes)
    out = np.zeros((d, d), dtype=np.int16)

    def put(rb, cb, block):
        out[ro[rb]:ro[rb + 1], co[cb]:co[cb + 1]] = block.array

    f = field
    put(0, 4, w(f, k1))
    put(1, 1, Mat.identity(f, n - t - k1))
    put(2, 8, Mat.identity(f, t))
    put(3, 3, Mat.identity(f, n - k2 - s))
    put(4, 0, w(f, k2))
    put(5, 7, Mat.identity(f, s))
    put(6, 6, Mat.identity(f, m - n - s - t))
    put(7, 5, Mat.identity(f, k2 - k1 + s))
    put(8, 2, Mat.identity(f, k1 - k2 + t))
    return Mat(field, out)


def gamma_rep(ctx, y, z, idx):
    """gamma_{Y,Z,k1,k2,t,s} = diag(Y, I_m) sigma diag(I_n, Z, I_{m-n})."""
    f = ctx.field
    n, m = ctx.n, ctx.m
    left = Mat.diag_blocks(f, [y, Mat.identity(f, m)])
    right = Mat.diag_blocks(f, [Mat.identity(f, n), z, Mat.identity(f, m - n)])
    return left @ sigma_matrix(f, n, m, idx) @ right


@dataclass
class CosetRecord:
    """A representative with its verdicts.

    admissible / witness are filled in by the verification pipeline; on a
    failed admissibility check `violation` holds the offending (h1, h2) pair.
    """

    index: OmegaIndex
    y: Mat
    z: Mat
    rep: Mat
    admissible: bool = None
    violation: tuple = None
    witness: tuple = None
    conditions: dict = dc_field(default_factory=dict)


def representatives(ctx):
    """All gamma_{Y,Z,idx}: idx in Omega order, then Y, then Z (lexicographic)."""
    gls = gl_list(ctx.field, ctx.n)
    for idx in omega_enumerate(ctx.n, ctx.m):
        for y in gls:
            for z in gls:
                yield CosetRecord(index=idx, y=y, z=z, rep=gamma_rep(ctx, y, z, idx))


# -- vectorized scan over H -------------------------------------------------

def _batch_det(field, x):
    """Determinants of a stack of square matrices, table-driven for size <= 3."""
    nn = x.shape[-1]
    mt, at = field.mul_table, field.add_table
    if nn == 0:
        return np.ones(x.shape[0], dtype=np.int16)
    if nn == 1:
        return x[:, 0, 0].astype(np.int16)
    if nn == 2:
        return at[mt[x[:, 0, 0], x[:, 1, 1]],
                  field.neg_table[mt[x[:, 0, 1], x[:, 1, 0]]]]
    if nn == 3:
        pos = at[at[mt[mt[x[:, 0, 0], x[:, 1, 1]], x[:, 2, 2]],
                    mt[mt[x[:, 0, 1], x[:, 1, 2]], x[:, 2, 0]]],
                 mt[mt[x[:, 0, 2], x[:, 1, 0]], x[:, 2, 1]]]
        neg = at[at[mt[mt[x[:, 0, 2], x[:, 1, 1]], x[:, 2, 0]],
                    mt[mt[x[:, 0, 0], x[:, 1, 2]], x[:, 2, 1]]],
                 mt[mt[x[:, 0, 1], x[:, 1, 0]], x[:, 2, 2]]]
        return at[pos, field.neg_table[neg]]
    return np.array([Mat(field, x[i]).det().code for i in range(x.shape[0])],
                    dtype=np.int16)


def _batch_inv(field, x, dets):
    """Inverses of a stack of invertible matrices, closed-form for size <= 2."""
    nn = x.shape[-1]
    it, mt = field.inv_table, field.mul_table
    if nn == 0:
        return x
    if nn == 1:
        return it[x].astype(np.int16)
    if nn == 2:
        di = it[dets]
        out = np.empty_like(x)
        out[:, 0, 0] = mt[di, x[:, 1, 1]]
        out[:, 1, 1] = mt[di, x[:, 0, 0]]
        out[:, 0, 1] = mt[di, field.neg_table[x[:, 0, 1]]]
        out[:, 1, 0] = mt[di, field.neg_table[x[:, 1, 0]]]
        return out
    return np.stack([Mat(field, x[i]).inv().array for i in range(x.shape[0])])


def _batch_triples(field, x, n, m):
    """Character triples (tr(g^{-1}u), det g, det k) for a stack of H members."""
    count = x.shape[0]
    if n == 0:
        tr = np.zeros(count, dtype=np.int16)
        dg = np.ones(count, dtype=np.int16)
    else:
        g = x[:, 0:n, 0:n]
        u = x[:, 0:n, n:2 * n]
        dg = _batch_det(field, g)
        gu = mul_codes(field, _batch_inv(field, g, dg), u)
        tr = np.zeros(count, dtype=np.int16)
        for i in range(n):
            tr = field.add_table[tr, gu[:, i, i]]
    if m > n:
        dk = _batch_det(field, x[:, 2 * n:, 2 * n:])
    else:
        dk = np.ones(count, dtype=np.int16)
    return tr, dg, dk


def _h_membership_mask(x, n, m):
    """Which members of a stack of invertible matrices lie in H_{n,m}.

    Invertibility of the diagonal blocks is implied for invertible
    block-triangular matrices, so only the shape constraints are tested.
    """
    ok = np.ones(x.shape[0], dtype=bool)
    if n:
        ok &= ~x[:, n:2 * n, 0:n].any(axis=(1, 2))
        ok &= (x[:, 0:n, 0:n] == x[:, n:2 * n, n:2 * n]).all(axis=(1, 2))
    if m > n:
        ok &= ~x[:, 2 * n:, 0:2 * n].any(axis=(1, 2))
    return ok


def _batch_tau(field, x, n, m):
    conj = Mat.diag_blocks(field, [w(field, 2 * n), Mat.identity(field, m - n)]).array
    xt = np.ascontiguousarray(x.transpose(0, 2, 1))
    return mul_codes(field, conj[None], mul_codes(field, xt, conj[None]))


@dataclass
class ScanResult:
    """Twist-independent admissibility/witness data for one representative.

    stab / wit map a combined character triple (field codes) to the least h2
    enumeration index realizing it, for stabilizer pairs and tau(gamma)-moving
    pairs respectively.
    """

    stab: dict
    wit: dict
    stab_count: int
    wit_count: int


def scan_representative(ctx, gamma, max_subgroup_order=10 ** 6):
    """Single vectorized pass over H classifying every pair (h1, h2)."""
    f = ctx.field
    n, m = ctx.n, ctx.m
    if n == 0:
        # Degenerate case H = G: tau and conjugation both preserve the
        # determinant, so every pair (whether stabilizing gamma or carrying it
        # to tau(gamma)) has the identity character triple.  Closed form, no
        # enumeration needed.
        size = h_size(ctx)
        return ScanResult(stab={(0, 1, 1): 0}, wit={(0, 1, 1): 0},
                          stab_count=size, wit_count=size)
    if h_size(ctx) > max_subgroup_order:
        raise BudgetError("|H| = %d exceeds the subgroup budget" % h_size(ctx))
    stack, tr_a, dg_a, dk_a = h_block_data(f, n, m)
    gi = gamma.inv().array
    tg = tau(gamma, n, m).array
    sub = mul_codes(f, stack, gi[None])
    h1s = mul_codes(f, gamma.array[None], sub)
    w1s = mul_codes(f, tg[None], sub)

    out = {}
    counts = {}
    for kind, cands in (("stab", h1s), ("wit", w1s)):
        tau_c = _batch_tau(f, cands, n, m)
        mask = _h_membership_mask(tau_c, n, m)
        idxs = np.nonzero(mask)[0]
        counts[kind] = len(idxs)
        if len(idxs) == 0:
            out[kind] = {}
            continue
        t_tr, t_dg, t_dk = _batch_triples(f, tau_c[idxs], n, m)
        # pair triple = triple(tau(h1)) * triple(h2)^{-1}, componentwise
        c_tr = f.add_table[t_tr, f.neg_table[tr_a[idxs]]]
        c_dg = f.mul_table[t_dg, f.inv_table[dg_a[idxs]]]
        c_dk = f.mul_table[t_dk, f.inv_table[dk_a[idxs]]]
        q = f.q
        codes = (c_tr.astype(np.int64) * q + c_dg) * q + c_dk
        uniq, first = np.unique(codes, return_index=True)
        table = {}
        for code, pos in zip(uniq.tolist(), first.tolist()):
            tr, rest = divmod(code, q * q)
            dg, dk = divmod(rest, q)
            table[(tr, dg, dk)] = int(idxs[pos])
        out[kind] = table
    return ScanResult(stab=out["stab"], wit=out["wit"],
                      stab_count=counts["stab"], wit_count=counts["wit"])


def _h_element(ctx, idx):
    """The idx-th element of H in enumeration order, reconstructed from the stack."""
    stack = h_block_data(ctx.field, ctx.n, ctx.m)[0]
    return Mat(ctx.field, stack[idx])


def admissible_from_scan(ctx, scan, flavor="psi_u"):
    """(verdict, violating h2 index or None); minimal index on failure."""
    bad = None
    for triple, idx in scan.stab.items():
        if not char_from_triple(ctx, triple, flavor).is_one:
            if bad is None or idx < bad:
                bad = idx
    return (bad is None), bad


def witness_from_scan(ctx, scan):
    """Least h2 index giving a psi-tau-invariance witness, or None."""
    best = None
    for triple, idx in scan.wit.items():
        if char_from_triple(ctx, triple, "psi").is_one:
            if best is None or idx < best:
                best = idx
    return best


# -- public verdict API -----------------------------------------------------

def stabilizer_pairs(ctx, gamma, max_subgroup_order=10 ** 6):
    """All (h1, h2) in H' x H with h1 gamma h2^{-1} = gamma, in H order."""
    scan_idx = _pair_indices(ctx, gamma, "stab", max_subgroup_order)
    gi = gamma.inv()
    for idx in scan_idx:
        h2 = _h_element(ctx, idx)
        yield gamma @ h2 @ gi, h2


def _pair_indices(ctx, gamma, kind, max_subgroup_order):
    f = ctx.field
    n, m = ctx.n, ctx.m
    if h_size(ctx) > max_subgroup_order:
        raise BudgetError("|H| = %d exceeds the subgroup budget" % h_size(ctx))
    stack = h_block_data(f, n, m)[0]
    gi = gamma.inv().array
    lead = gamma.array if kind == "stab" else tau(gamma, n, m).array
    h1s = mul_codes(f, lead[None], mul_codes(f, stack, gi[None]))
    mask = _h_membership_mask(_batch_tau(f, h1s, n, m), n, m)
    return np.nonzero(mask)[0]


def is_admissible(ctx, gamma, flavor="psi_u", max_subgroup_order=10 ** 6):
    """(verdict, violating pair or None) by full stabilizer enumeration."""
    scan = scan_representative(ctx, gamma, max_subgroup_order)
    ok, bad = admissible_from_scan(ctx, scan, flavor)
    if ok:
        return True, None
    h2 = _h_element(ctx, bad)
    return False, (gamma @ h2 @ gamma.inv(), h2)


def invariance_witness(ctx, gamma, max_subgroup_order=10 ** 6):
    """First (h1, h2) with h1 gamma h2^{-1} = tau(gamma) and pairing character 1."""
    if ctx.n == 0:
        # h2 = 1 and h1 = tau(gamma) gamma^{-1} always work when H = G.
        return (tau(gamma, 0, ctx.m) @ gamma.inv(),
                Mat.identity(ctx.field, ctx.m))
    scan = scan_representative(ctx, gamma, max_subgroup_order)
    idx = witness_from_scan(ctx, scan)
    if idx is None:
        return None
    h2 = _h_element(ctx, idx)
    return tau(gamma, ctx.n, ctx.m) @ h2 @ gamma.inv(), h2


# -- structural necessary conditions ---------------------------------------

def _y_blocks(ctx, record):
    n = ctx.n
    k1, k2, t, s = (record.index.k1, record.index.k2, record.index.t, record.index.s)
    rows = np.cumsum([0, n - k2 - s, k2, s])
    cols = np.cumsum([0, k2, n - t - k1, t + k1 - k2])
    return rows, cols


def _z_blocks(ctx, record):
    n = ctx.n
    k1, k2, t, s = (record.index.k1, record.index.k2, record.index.t, record.index.s)
    rows = np.cumsum([0, n - k2 - s, k1, s + k2 - k1])
    cols = np.cumsum([0, k2, n - t - k1, t + k1 - k2])
    return rows, cols


def _block(mat, rows, cols, i, j):
    # 1-based block position (i, j) in the 3 x 3 split
    return mat.array[rows[i - 1]:rows[i], cols[j - 1]:cols[j]]


def necessary_conditions(ctx, record):
    """Evaluate the structural conclusions that must hold on an admissible coset.

    Returns a dict of condition name -> "pass" / "fail" / "vacuous".  Only
    meaningful when the record is admissible under psi_u.
    """
    n, m = ctx.n, ctx.m
    idx = record.index
    k1, k2, t, s = idx.k1, idx.k2, idx.t, idx.s
    arr = record.rep.array
    out = {}

    # Zero rows/columns propagate into the designated strips.
    ok = True
    width = t + k1 - k2
    for i in range(n + m):
        if n and not arr[i, 0:n].any():
            if arr[i, 2 * n - width:2 * n].any():
                ok = False
    out["row-strip"] = "pass" if ok else "fail"
    ok = True
    for j in range(n + m):
        if n and not arr[n:2 * n, j].any():
            if arr[n - s:n, j].any():
                ok = False
    out["col-strip"] = "pass" if ok else "fail"

    yr, yc = _y_blocks(ctx, record)
    zr, zc = _z_blocks(ctx, record)
    vanish_ok = (not _block(record.z, zr, zc, 1, 3).any()
                 and not _block(record.z, zr, zc, 3, 3).any()
                 and not _block(record.y, yr, yc, 3, 2).any()
                 and not _block(record.y, yr, yc, 3, 3).any())
    out["vanishing-blocks"] = "pass" if vanish_ok else "fail"

    y2 = _block(record.y, yr, yc, 1, 2)
    z2 = _block(record.z, zr, zc, 1, 2)
    out["y2-equals-z2"] = "pass" if (y2.shape == z2.shape and (y2 == z2).all()) else "fail"

    if y2.size == 0 or (not y2.any() and not z2.any()):
        if y2.size and not y2.any() and not z2.any():
            out["zero-y2-degenerate"] = "pass" if (s == 0 and t + k1 - k2 == 0) else "fail"
        else:
            out["zero-y2-degenerate"] = "vacuous"
    else:
        out["zero-y2-degenerate"] = "vacuous"
    return out


# -- orbit search and completeness -----------------------------------------

def _encode_stack(field, stack):
    """Injective int64 code per matrix in a stack."""
    flat = stack.reshape(stack.shape[0], -1).astype(np.int64)
    pows = field.q ** np.arange(flat.shape[1], dtype=np.int64)
    return flat @ pows


def coset_elements(ctx, gamma, max_orbit=10 ** 5, target=None):
    """Breadth-first closure of H' gamma H by generator moves, batched.

    Returns the set of element codes (injective int64 encodings), or stops
    early (returning True) once `target` (a Mat) is reached.
    """
    f = ctx.field
    left = [g.array for g in hprime_generators(ctx)]
    right = [g.array for g in h_generators(ctx)]
    tcode = None if target is None else int(_encode_stack(f, target.array[None])[0])
    seen = {int(_encode_stack(f, gamma.array[None])[0])}
    frontier = gamma.array[None]
    while len(frontier):
        prods = ([mul_codes(f, g[None], frontier) for g in left]
                 + [mul_codes(f, frontier, g[None]) for g in right])
        if not prods:
            break
        batch = np.concatenate(prods)
        codes = _encode_stack(f, batch)
        uniq, first = np.unique(codes, return_index=True)
        fresh = np.array([c not in seen for c in uniq.tolist()])
        if not fresh.any():
            break
        seen.update(uniq[fresh].tolist())
        if tcode is not None and tcode in seen:
            return True
        if len(seen) > max_orbit:
            raise BudgetError("coset orbit exceeded the budget %d" % max_orbit)
        frontier = batch[first[fresh]]
    if target is not None:
        return tcode in seen
    return seen


def same_coset(ctx, x, y, max_orbit=10 ** 5):
    """Whether y lies in H' x H (same double coset), by breadth-first search."""
    if x == y:
        return True
    return coset_elements(ctx, x, max_orbit, target=y) is True


def completeness_check(ctx, max_group_order=10 ** 5):
    """Verify that the representative family partitions G.

    Walks the family in canonical order, grows each fresh double coset by
    breadth-first closure, counts repetitions, and checks the union is G.
    """
    d = ctx.size
    total = gl_order(ctx.field.q, d)
    if total > max_group_order:
        raise BudgetError("|G| = %d exceeds the completeness budget" % total)
    f = ctx.field
    seen = set()
    sizes = []
    repetitions = 0
    listed = 0
    for record in representatives(ctx):
        listed += 1
        code = int(_encode_stack(f, record.rep.array[None])[0])
        if code in seen:
            repetitions += 1
            continue
        members = coset_elements(ctx, record.rep, max_orbit=max_group_order)
        if members & seen:
            raise AssertionError("double cosets overlap; representative bug")
        seen |= members
        sizes.append(len(members))
    covered = len(seen) == total
    return {"group_order": total, "listed": listed, "distinct": len(sizes),
            "repetitions": repetitions, "sizes": sorted(sizes), "covers": covered,
            "ok": covered}


# -- extended action on Mat_{n+m}, cut and reduced form ---------------------

def _pair_stacks(ctx):
    f = ctx.field
    stack = h_block_data(f, ctx.n, ctx.m)[0]
    taus = _batch_tau(f, stack, ctx.n, ctx.m)
    inv2 = np.stack([Mat(f, stack[i]).inv().array for i in range(len(stack))])
    return stack, taus, inv2


@lru_cache(maxsize=8)
def _pair_stacks_cached(field, n, m):
    return _pair_stacks(ShalikaContext(field, n, m))


def mat_pairs_moving(ctx, x, target, max_pairs=10 ** 6):
    """All (i1, i2) index pairs with h1 x h2^{-1} = target, h1 = tau(H)[i1].

    Works for arbitrary (possibly singular) x: this is the extended action of
    H-tilde on all of Mat_{n+m}.
    """
    f = ctx.field
    count = h_size(ctx)
    if count * count > max_pairs:
        raise BudgetError("|H|^2 = %d exceeds the pair budget" % (count * count))
    stack, taus, inv2 = _pair_stacks_cached(f, ctx.n, ctx.m)
    found = []
    for i2 in range(count):
        xh = mul_codes(f, x.array, inv2[i2])
        prods = mul_codes(f, taus, xh[None])
        hits = np.nonzero((prods == target.array[None]).all(axis=(1, 2)))[0]
        for i1 in hits:
            found.append((int(i1), i2))
    return found


def _pair_character(ctx, i1, i2, flavor):
    f = ctx.field
    _, tr_a, dg_a, dk_a = h_block_data(f, ctx.n, ctx.m)
    stack, taus, _ = _pair_stacks_cached(f, ctx.n, ctx.m)
    # h1 = tau(stack[i1]), so tau(h1) = stack[i1]: its triple is tabulated.
    t1 = (int(tr_a[i1]), int(dg_a[i1]), int(dk_a[i1]))
    t2 = (int(tr_a[i2]), int(dg_a[i2]), int(dk_a[i2]))
    return char_from_triple(ctx, triple_mul(f, t1, triple_inv(f, t2)), flavor)


def mat_admissible(ctx, x, flavor="psi_u", max_pairs=10 ** 6):
    """Admissibility of any x in Mat_{n+m} under the extended H-tilde action."""
    for i1, i2 in mat_pairs_moving(ctx, x, x, max_pairs):
        if not _pair_character(ctx, i1, i2, flavor).is_one:
            return False
    return True


def mat_invariant(ctx, x, max_pairs=10 ** 6):
    """psi-tau-invariance of any x in Mat_{n+m} under the extended action."""
    target = tau(x, ctx.n, ctx.m)
    for i1, i2 in mat_pairs_moving(ctx, x, target, max_pairs):
        if _pair_character(ctx, i1, i2, "psi").is_one:
            return True
    return False


def cut(eta, n):
    """The top-left 2n x 2n block."""
    if eta.rows < 2 * n or eta.cols < 2 * n:
        raise ValueError("matrix too small to cut at 2n = %d" % (2 * n))
    return eta.block(0, 2 * n, 0, 2 * n)


def eta_matrix(field, n, m, k, t, a0, b0, a0p, b0p):
    """Assemble the reducible-position matrix with blocks A0, B0, A0', B0'.

    Block layout (row and column partition k, n-k | n-k, k | m-n-t, t):

        [ 0    .  | .  A0 | .  A0' ]
        [ .  I    | .  .  | .  .   ]
        [ .    .  | I  .  | .  .   ]
        [ B0   .  | .  0  | .  .   ]
        [ .    .  | .  .  | I  .   ]
        [ .    .  | .  B0'| .  0   ]
    """
    if not (n / 2 <= k <= n and 0 <= t <= min(m - n, k)):
        raise ValueError("need n/2 <= k <= n and 0 <= t <= min(m-n, k)")
    if (a0.rows, a0.cols) != (k, k) or (b0.rows, b0.cols) != (k, k):
        raise ValueError("A0, B0 must be k x k")
    if (a0p.rows, a0p.cols) != (k, t) or (b0p.rows, b0p.cols) != (t, k):
        raise ValueError("A0' must be k x t and B0' t x k")
    d = n + m
    out = np.zeros((d, d), dtype=np.int16)
    out[k:n, k:n] = np.eye(n - k, dtype=np.int16)
    out[n:2 * n - k, n:2 * n - k] = np.eye(n - k, dtype=np.int16)
    out[2 * n:d - t, 2 * n:d - t] = np.eye(m - n - t, dtype=np.int16)
    out[0:k, 2 * n - k:2 * n] = a0.array
    out[0:k, d - t:d] = a0p.array
    out[2 * n - k:2 * n, 0:k] = b0.array
    out[d - t:d, 2 * n - k:2 * n] = b0p.array
    return Mat(field, out)


def eta_shape(eta, n, m):
    """Recognize the eta block pattern; returns (k, t) or None."""
    d = n + m
    if (eta.rows, eta.cols) != (d, d):
        return None
    arr = eta.array
    for k in range((n + 1) // 2, n + 1):
        for t in range(0, min(m - n, k) + 1):
            cand = eta_matrix(eta.field, n, m, k, t,
                              Mat(eta.field, arr[0:k, 2 * n - k:2 * n]),
                              Mat(eta.field, arr[2 * n - k:2 * n, 0:k]),
                              Mat(eta.field, arr[0:k, d - t:d]),
                              Mat(eta.field, arr[d - t:d, 2 * n - k:2 * n]))
            if (cand.array == arr).all():
                return k, t
    return None


def _is_reduced_form(eta, n, m, k, t):
    """Reduced form: A = E_{S1,S2}(P) for a partial permutation of rank k - t,
    A' = E_{S1^C,[t]}(I_t) and B' = E_{[t],S2^C}(I_t)."""
    d = n + m
    arr = eta.array
    a = arr[0:k, 2 * n - k:2 * n]
    ap = arr[0:k, d - t:d]
    bp = arr[d - t:d, 2 * n - k:2 * n]
    if ((a != 0) & (a != 1)).any():
        return False
    if (a.sum(axis=0) > 1).any() or (a.sum(axis=1) > 1).any():
        return False
    s1 = [i for i in range(k) if a[i].any()]
    s2 = [j for j in range(k) if a[:, j].any()]
    if len(s1) != k - t or len(s2) != k - t:
        return False
    s1c = [i for i in range(k) if i not in s1]
    s2c = [j for j in range(k) if j not in s2]
    want_ap = np.zeros((k, t), dtype=np.int16)
    for col, row in enumerate(s1c):
        want_ap[row, col] = 1
    want_bp = np.zeros((t, k), dtype=np.int16)
    for row, col in enumerate(s2c):
        want_bp[row, col] = 1
    return (ap == want_ap).all() and (bp == want_bp).all()


def reduced_form(ctx, eta, max_orbit=10 ** 5):
    """An H-tilde-equivalent representative of eta in reduced form.

    Found by breadth-first search over the double coset; the first reduced
    element encountered (breadth-first, generator order) is returned.
    """
    n, m = ctx.n, ctx.m
    shape = eta_shape(eta, n, m)
    if shape is None:
        raise ValueError("matrix is not in the eta block pattern")
    f = ctx.field
    left = [g.array for g in hprime_generators(ctx)]
    right = [g.array for g in h_generators(ctx)]
    seen = {eta.key()}
    frontier = [eta.array]
    while frontier:
        new = []
        for x in frontier:
            cand = Mat(f, x)
            sh = eta_shape(cand, n, m)
            if sh is not None and _is_reduced_form(cand, n, m, sh[0], sh[1]):
                return cand
            for gen in left:
                y = mul_codes(f, gen, x)
                key = Mat(f, y).key()
                if key not in seen:
                    seen.add(key)
                    new.append(y)
            for gen in right:
                y = mul_codes(f, x, gen)
                key = Mat(f, y).key()
                if key not in seen:
                    seen.add(key)
                    new.append(y)
            if len(seen) > max_orbit:
                raise BudgetError("orbit exceeded the budget %d" % max_orbit)
        frontier = new
    raise AssertionError("no reduced form found in the orbit; this is a bug")
