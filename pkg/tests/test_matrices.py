import numpy as np
import pytest

from shalika.field import Field
from shalika.matrices import (IndexSet, Mat, all_matrices, embed, gl_generators,
                              gl_list, gl_order, mul_codes, perm_matrix, tau,
                              tau_by, transpose_similarity_witness, w, weld)

F2 = Field(2)
F3 = Field(3)


def test_mat_basics():
    a = Mat.from_rows(F3, [[1, 2], [0, 1]])
    assert a.rows == 2 and a.cols == 2
    assert (a @ Mat.identity(F3, 2)) == a
    assert a.det().code == 1
    assert a @ a.inv() == Mat.identity(F3, 2)
    assert (a + (-a)) == Mat.zeros(F3, 2)
    assert a.T == Mat.from_rows(F3, [[1, 0], [2, 1]])


def test_det_matches_permutation_expansion():
    # brute-force determinant by permutation expansion on random 3x3s
    import itertools
    rng = np.random.default_rng(7)
    for _ in range(25):
        arr = rng.integers(0, 3, size=(3, 3))
        m = Mat(F3, arr.astype(np.int16))
        total = 0
        for perm in itertools.permutations(range(3)):
            sign = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = 1
            for i in range(3):
                prod = (prod * int(arr[i, perm[i]])) % 3
            total = (total + sign * prod) % 3
        assert m.det().code == total


def test_singular_inverse_raises():
    m = Mat.from_rows(F2, [[1, 1], [1, 1]])
    assert not m.is_invertible()
    with pytest.raises(ZeroDivisionError):
        m.inv()


def test_zero_dim_matrix():
    e = Mat.zeros(F2, 0)
    assert e.det().code == 1
    assert e.inv() == e
    assert (e @ e) == e


def test_mul_codes_batched():
    # stack times single agrees with elementwise Mat products
    mats = gl_list(F3, 2)[:20]
    stack = np.stack([m.array for m in mats])
    b = mats[3]
    out = mul_codes(F3, stack, b.array[None])
    for i, m in enumerate(mats):
        assert (out[i] == (m @ b).array).all()


def test_gl_enumeration():
    assert len(gl_list(F2, 2)) == gl_order(2, 2) == 6
    assert len(gl_list(F3, 2)) == gl_order(3, 2) == 48
    assert len(gl_list(F2, 0)) == 1
    assert gl_order(2, 4) == 20160


def test_gl_generators_generate():
    for f, n in [(F2, 2), (F3, 2), (F2, 3)]:
        gens = gl_generators(f, n)
        seen = {Mat.identity(f, n).key()}
        frontier = [Mat.identity(f, n)]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = x @ g
                    if y.key() not in seen:
                        seen.add(y.key())
                        new.append(y)
            frontier = new
        assert len(seen) == gl_order(f.q, n)


def test_w_and_perm():
    assert w(F2, 3) == perm_matrix(F2, (3, 2, 1))
    assert w(F3, 2) @ w(F3, 2) == Mat.identity(F3, 2)
    p = perm_matrix(F3, (2, 3, 1))
    e1 = Mat.from_rows(F3, [[1], [0], [0]])
    # row i of the permutation matrix is e_{sigma(i)}
    assert (p.array[0] == np.array([0, 1, 0])).all()
    assert p @ p @ p == Mat.identity(F3, 3)
    assert e1 is not None


def test_tau_involution_and_antihomomorphism():
    n, m = 1, 2
    a = Mat.from_rows(F3, [[1, 2, 0], [0, 1, 1], [0, 2, 2]])
    b = Mat.from_rows(F3, [[2, 0, 1], [1, 1, 0], [0, 0, 1]])
    assert tau(tau(a, n, m), n, m) == a
    assert tau(a @ b, n, m) == tau(b, n, m) @ tau(a, n, m)
    # tau_by with r = full size is plain anti-transpose conjugation
    assert tau_by(a, 3) == w(F3, 3) @ a.T @ w(F3, 3)


def test_embed_and_weld():
    s1 = IndexSet(4, [1, 3])
    s2 = IndexSet(4, [2, 4])
    a = Mat.from_rows(F3, [[1, 2], [0, 1]])
    e = embed(s1, s2, a)
    assert e.array[0, 1] == 1 and e.array[0, 3] == 2
    assert e.array[2, 1] == 0 and e.array[2, 3] == 1
    assert e.array[1].sum() == 0
    b = Mat.from_rows(F3, [[2, 0], [1, 1]])
    x = weld(s1, s2, a, b)
    assert x.array[1, 0] == 2 and x.array[3, 2] == 1


def test_index_set():
    s = IndexSet(5, [2, 4])
    assert s.complement().members == (1, 3, 5)
    with pytest.raises(ValueError):
        IndexSet(3, [2, 2])


def test_all_matrices_count():
    assert len(list(all_matrices(F2, 2, 2))) == 16
    assert len(list(all_matrices(F3, 1, 2))) == 9
    assert len(list(all_matrices(F2, 0, 3))) == 1


def test_transpose_similarity():
    # every square matrix over a field is similar to its transpose
    for mats in (gl_list(F2, 2), gl_list(F3, 2)[:12]):
        for m in mats:
            c = transpose_similarity_witness(m)
            assert c is not None
            assert c @ m @ c.inv() == m.T


def test_to_text_round_shape():
    m = Mat.from_rows(F3, [[1, 2], [0, 1]])
    text = m.to_text()
    assert "2x2" in text
