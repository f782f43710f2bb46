"""Matrices over F_q plus the structural operators used throughout.

A Mat is an immutable wrapper around a numpy array of field codes.  All
arithmetic is table-driven through the owning Field, so the same code path
handles prime and extension fields exactly.  Sizes never exceed 8x8, so
Gaussian elimination in plain Python loops is plenty.

Also here: the index-set scatter operator, welding, the anti-involution
tau, anti-diagonal and permutation matrices, and GL(n, q) enumeration.
"""

from functools import lru_cache
import itertools

import numpy as np

from .field import FqElem


class BudgetError(Exception):
    """An enumeration budget would be exceeded; the check is refused, not skipped."""


def mul_codes(field, a, b):
    """Table-driven matrix product on raw code arrays; supports stacks.

    a, b may have leading batch dimensions (numpy broadcasting rules on the
    batch axes); the trailing two axes are the matrix axes.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if b.shape[-2] != inner:
        raise ValueError("dimension mismatch: %s @ %s" % (a.shape, b.shape))
    rows = a.shape[:-1] + (b.shape[-1],)
    out = np.zeros(np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1]),
                   dtype=np.int16)
    mul_t = field.mul_table
    add_t = field.add_table
    for kk in range(inner):
        term = mul_t[a[..., :, kk][..., :, None], b[..., kk, :][..., None, :]]
        out = add_t[out, term]
    return out


def add_codes(field, a, b):
    return field.add_table[np.asarray(a), np.asarray(b)]


def neg_codes(field, a):
    return field.neg_table[np.asarray(a)]


class Mat:
    """An immutable rows x cols matrix over a Field, entries as codes.

    Zero-dimensional matrices are first-class values: degenerate block sizes
    show up routinely in the coset machinery.
    """

    __slots__ = ("field", "array", "_key")

    def __init__(self, field, array):
        arr = np.asarray(array, dtype=np.int16)
        if arr.ndim != 2:
            raise ValueError("Mat needs a 2-d array")
        arr = arr.copy()
        arr.setflags(write=False)
        self.field = field
        self.array = arr
        self._key = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols=None):
        if cols is None:
            cols = rows
        return cls(field, np.zeros((rows, cols), dtype=np.int16))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int16))

    @classmethod
    def from_rows(cls, field, rows):
        data = [[e.code if isinstance(e, FqElem) else int(e) % field.q for e in row]
                for row in rows]
        ncols = {len(r) for r in data}
        if len(ncols) > 1:
            raise ValueError("ragged rows")
        arr = np.array(data, dtype=np.int16) if data else np.zeros((0, 0), dtype=np.int16)
        return cls(field, arr)

    @classmethod
    def diag_blocks(cls, field, blocks):
        """Block-diagonal assembly from a list of square Mats."""
        n = sum(b.rows for b in blocks)
        out = np.zeros((n, n), dtype=np.int16)
        at = 0
        for b in blocks:
            out[at:at + b.rows, at:at + b.cols] = b.array
            at += b.rows
        return cls(field, out)

    @classmethod
    def assemble(cls, field, grid):
        """Assemble from a 2-d grid of conformal blocks."""
        rows = [np.concatenate([b.array for b in row], axis=1) for row in grid]
        return cls(field, np.concatenate(rows, axis=0))

    # -- shape / access -----------------------------------------------------

    @property
    def rows(self):
        return self.array.shape[0]

    @property
    def cols(self):
        return self.array.shape[1]

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return FqElem(self.field, int(self.array[i, j]))

    def block(self, r0, r1, c0, c1):
        return Mat(self.field, self.array[r0:r1, c0:c1])

    def key(self):
        """Canonical byte encoding (dims then row-major codes); the dedup key."""
        if self._key is None:
            self._key = (b"%d,%d:" % self.array.shape) + self.array.astype(np.uint8).tobytes()
        return self._key

    # -- arithmetic ---------------------------------------------------------

    def _conform(self, other, need):
        if other.field != self.field:
            raise ValueError("mixed-field matrices")
        if need == "same" and self.array.shape != other.array.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.array.shape, other.array.shape))
        if need == "mul" and self.cols != other.rows:
            raise ValueError("inner dimension mismatch %s @ %s"
                             % (self.array.shape, other.array.shape))

    def __add__(self, other):
        self._conform(other, "same")
        return Mat(self.field, add_codes(self.field, self.array, other.array))

    def __sub__(self, other):
        self._conform(other, "same")
        return Mat(self.field, add_codes(self.field, self.array,
                                         neg_codes(self.field, other.array)))

    def __neg__(self):
        return Mat(self.field, neg_codes(self.field, self.array))

    def __matmul__(self, other):
        self._conform(other, "mul")
        return Mat(self.field, mul_codes(self.field, self.array, other.array))

    def scalar_mul(self, c):
        c = self.field.elem(c)
        return Mat(self.field, self.field.mul_table[self.array, c.code])

    @property
    def T(self):
        return Mat(self.field, self.array.T)

    def is_zero(self):
        return not self.array.any()

    # -- determinant / inverse ----------------------------------------------

    def det(self):
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        f = self.field
        a = self.array.astype(np.int64).tolist()
        n = self.rows
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return FqElem(f, 0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = f.neg(det)
            det = f.mul(det, a[col][col])
            pinv = f.inv(a[col][col])
            for r in range(col + 1, n):
                factor = f.mul(a[r][col], pinv)
                if factor:
                    for c in range(col, n):
                        a[r][c] = f.sub(a[r][c], f.mul(factor, a[col][c]))
        return FqElem(f, det)

    def is_invertible(self):
        return self.is_square and bool(self.det())

    def inv(self):
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        f = self.field
        n = self.rows
        if n == 0:
            return self
        a = self.array.astype(np.int64).tolist()
        b = np.eye(n, dtype=np.int64).tolist()
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                b[col], b[piv] = b[piv], b[col]
            pinv = f.inv(a[col][col])
            a[col] = [f.mul(x, pinv) for x in a[col]]
            b[col] = [f.mul(x, pinv) for x in b[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    factor = a[r][col]
                    a[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[r], a[col])]
                    b[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(b[r], b[col])]
        return Mat(f, np.array(b, dtype=np.int16))

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Mat) and other.field == self.field
                and other.array.shape == self.array.shape
                and bool((other.array == self.array).all()))

    def __hash__(self):
        return hash((self.field.q, self.key()))

    def to_text(self):
        """Canonical report format: q:rows x cols:[row;row;...], coefficient tuples."""
        f = self.field
        rows = []
        for r in range(self.rows):
            rows.append(",".join("(%s)" % ":".join(map(str, f.coeffs(int(c))))
                                 for c in self.array[r]))
        return "%d:%dx%d:[%s]" % (f.q, self.rows, self.cols, ";".join(rows))

    def __repr__(self):
        return "Mat(q=%d, %s)" % (self.field.q, self.array.tolist())


class IndexSet:
    """A strictly increasing subset of [N] = {1, ..., N} (1-based throughout)."""

    __slots__ = ("universe", "members")

    def __init__(self, universe, members):
        members = tuple(members)
        if any(members[i] >= members[i + 1] for i in range(len(members) - 1)):
            raise ValueError("members must be strictly increasing")
        if members and not (1 <= members[0] and members[-1] <= universe):
            raise ValueError("members out of range 1..%d" % universe)
        self.universe = universe
        self.members = members

    def complement(self):
        present = set(self.members)
        return IndexSet(self.universe, [i for i in range(1, self.universe + 1)
                                        if i not in present])

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i):
        return i in self.members

    def __eq__(self, other):
        return (isinstance(other, IndexSet)
                and (other.universe, other.members) == (self.universe, self.members))

    def __hash__(self):
        return hash((self.universe, self.members))

    def __repr__(self):
        return "IndexSet(%d, %s)" % (self.universe, list(self.members))


def embed(s1, s2, a):
    """Scatter a |S1| x |S2| matrix into an N x N matrix at rows S1, cols S2."""
    if s1.universe != s2.universe:
        raise ValueError("index sets with different universes")
    if (a.rows, a.cols) != (len(s1), len(s2)):
        raise ValueError("matrix shape %sx%s does not match |S1|=%d, |S2|=%d"
                         % (a.rows, a.cols, len(s1), len(s2)))
    n = s1.universe
    out = np.zeros((n, n), dtype=np.int16)
    ridx = [i - 1 for i in s1.members]
    cidx = [j - 1 for j in s2.members]
    if ridx and cidx:
        out[np.ix_(ridx, cidx)] = a.array
    return Mat(a.field, out)


def weld(s1, s2, a, b):
    """A (+)_{S1,S2} B: scatter A into (S1, S2) and B into the complements."""
    if (b.rows, b.cols) != (s1.universe - len(s1), s2.universe - len(s2)):
        raise ValueError("second operand has the wrong shape for the complements")
    return embed(s1, s2, a) + embed(s1.complement(), s2.complement(), b)


def w(field, k):
    """The k x k anti-diagonal permutation matrix."""
    out = np.zeros((k, k), dtype=np.int16)
    for i in range(k):
        out[i, k - 1 - i] = 1
    return Mat(field, out)


def perm_matrix(field, sigma):
    """Row-representation permutation matrix: row i is e_{sigma(i)} (1-based)."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("not a permutation of [%d]: %r" % (n, sigma))
    out = np.zeros((n, n), dtype=np.int16)
    for i, img in enumerate(sigma):
        out[i, img - 1] = 1
    return Mat(field, out)


def tau_by(g, r):
    """Conjugated transpose by diag(w_r, I): the general anti-involution kernel."""
    if not g.is_square:
        raise ValueError("tau of a non-square matrix")
    n = g.rows
    if not 0 <= r <= n:
        raise ValueError("w-block size out of range")
    conj = Mat.diag_blocks(g.field, [w(g.field, r), Mat.identity(g.field, n - r)])
    return conj @ g.T @ conj


def tau(g, n, m):
    """The anti-involution g -> diag(w_{2n}, I_{m-n}) g^t diag(w_{2n}, I_{m-n})."""
    if g.rows != n + m or g.cols != n + m:
        raise ValueError("expected a %d x %d matrix" % (n + m, n + m))
    return tau_by(g, 2 * n)


def all_matrices(field, rows, cols=None):
    """Iterate every rows x cols matrix over F_q, lexicographic in row-major codes."""
    if cols is None:
        cols = rows
    if rows * cols == 0:
        yield Mat.zeros(field, rows, cols)
        return
    for entries in itertools.product(range(field.q), repeat=rows * cols):
        yield Mat(field, np.array(entries, dtype=np.int16).reshape(rows, cols))


@lru_cache(maxsize=None)
def gl_list(field, n):
    """All of GL_n(F_q) in lexicographic order of the row-major code vector."""
    return tuple(a for a in all_matrices(field, n) if a.is_invertible())


def gl_order(q, n):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def gl_generators(field, n):
    """A small generating set of GL_n(F_q): diag(gen,1,..), the n-cycle, a transvection."""
    gens = []
    if n == 0:
        return gens
    d = np.eye(n, dtype=np.int16)
    d[0, 0] = field.generator
    if field.q > 2:
        gens.append(Mat(field, d))
    if n >= 2:
        cyc = perm_matrix(field, tuple(list(range(2, n + 1)) + [1]))
        gens.append(cyc)
        t = np.eye(n, dtype=np.int16)
        t[0, 1] = 1
        gens.append(Mat(field, t))
    if not gens:
        gens.append(Mat.identity(field, n))
    return gens


def transpose_similarity_witness(m, max_group_order=200000):
    """Find X in GL with X M X^{-1} = M^t, by exhaustive search.

    Every square matrix is similar to its transpose, so a witness exists; the
    budget guards against groups too large to sweep.
    """
    if not m.is_square:
        raise ValueError("need a square matrix")
    n = m.rows
    if gl_order(m.field.q, n) > max_group_order:
        raise ValueError("GL_%d(F_%d) exceeds the search budget" % (n, m.field.q))
    mt = m.T
    for x in gl_list(m.field, n):
        if x @ m == mt @ x:
            return x
    raise AssertionError("no transpose-similarity witness found; this is a bug")
