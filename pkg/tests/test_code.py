import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from incidence_ldpc.algebra import build_ring
from incidence_ldpc.code import (
    HAMMING_7_4,
    LinearCode,
    ParityCheckMatrix,
    encode,
    export_alist,
    gf2_rank,
    gf2_rref,
    hamming_distance,
    import_alist,
    parity_check_from_graph,
    rate_report,
    syndrome,
    systematic_generator,
)
from incidence_ldpc.graph import IncidenceGraph, canonical_restriction

from conftest import brute_rank, cached_graph


def hamming_codebook():
    """All 16 words with zero syndrome, by enumeration of F_2^7."""
    return [w for w in itertools.product([0, 1], repeat=7)
            if not (HAMMING_7_4 @ np.array(w) % 2).any()]


def test_parity_check_from_graph_shapes():
    H = parity_check_from_graph(cached_graph("field", 3))
    assert H.shape == (81, 243)
    H = parity_check_from_graph(cached_graph("ring", 4))
    assert H.shape == (256, 1024) and H.nnz == 4096
    H = parity_check_from_graph(cached_graph("ring", 5, canonical_restriction(build_ring(5), 16)))
    assert H.shape == (625, 2000)


@pytest.mark.parametrize("family, base", [("field", 2), ("field", 3), ("field", 4), ("ring", 3)])
def test_graph_matrix_regular(family, base):
    g = cached_graph(family, base)
    H = parity_check_from_graph(g)
    assert H.nnz == base ** 6
    assert np.all(H.row_weights() == base ** 2) and np.all(H.col_weights() == base)
    dense = H.to_dense()
    for j in range(0, H.n, 5):
        assert list(H.col(j)) == list(np.flatnonzero(dense[:, j]))


def test_parity_check_from_graph_empty_side():
    with pytest.raises(ValueError):
        parity_check_from_graph(IncidenceGraph.from_biadjacency(np.zeros((2, 0))))


def test_gf2_rank_basics(hamming):
    assert gf2_rank(hamming) == 3
    assert gf2_rank(np.zeros((4, 9), dtype=np.uint8)) == 0
    for k in (1, 5, 64, 65, 130):
        assert gf2_rank(np.eye(k, dtype=np.uint8)) == k


def test_gf2_rank_does_not_modify(hamming):
    before = hamming.to_dense().copy()
    gf2_rank(hamming)
    assert np.array_equal(hamming.to_dense(), before)


def test_gf2_rank_budget():
    with pytest.raises(MemoryError):
        gf2_rank(np.eye(100, dtype=np.uint8), budget=50)


@given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 140)), elements=st.integers(0, 1)))
@settings(max_examples=150, deadline=None)
def test_gf2_rank_matches_oracle(m):
    assert gf2_rank(m) == brute_rank(m)


@pytest.mark.parametrize("family, base", [("ring", 2), ("field", 2), ("ring", 3), ("field", 3),
                                          ("ring", 4), ("field", 4)])
def test_gf2_rank_graph_matches_oracle(family, base):
    H = parity_check_from_graph(cached_graph(family, base))
    assert gf2_rank(H) == brute_rank(H.to_dense())


def test_gf2_rank_ring3():
    # independent elimination gives 73, not the full 81 assumed by K = N - R
    H = parity_check_from_graph(cached_graph("ring", 3))
    assert gf2_rank(H) == brute_rank(H.to_dense()) == 73


def test_rref_shape(hamming):
    rref, pivots = gf2_rref(hamming)
    assert rref.shape == (3, 7) and len(pivots) == 3
    assert np.array_equal(rref[:, pivots], np.eye(3, dtype=np.uint8))


def test_systematic_generator_hamming(hamming):
    G, perm = systematic_generator(hamming)
    assert G.shape == (4, 7)
    assert np.array_equal(G[:, :4], np.eye(4, dtype=np.uint8))
    book = {tuple(w) for w in hamming_codebook()}
    spanned = set()
    for msg in itertools.product([0, 1], repeat=4):
        word = np.zeros(7, dtype=np.uint8)
        word[perm] = np.array(msg) @ G % 2
        assert not syndrome(hamming, word).any()
        spanned.add(tuple(word))
    assert spanned == book


def test_systematic_generator_repetition():
    G, perm = systematic_generator(np.array([[1, 1]]))
    assert G.tolist() == [[1, 1]]
    with pytest.raises(ValueError):
        systematic_generator(np.eye(3, dtype=np.uint8))


def test_generator_orthogonal_to_h(code_243):
    G = code_243.generator()
    word = np.zeros((G.shape[0], code_243.n), dtype=np.uint8)
    word[:, code_243.perm] = G
    assert not syndrome(code_243.H, word).any()


def test_encode_zero_and_codebook(hamming_code):
    assert not encode(hamming_code, np.zeros(4)).any()
    book = {tuple(w) for w in hamming_codebook()}
    assert len(book) == 16
    for msg in itertools.product([0, 1], repeat=4):
        assert tuple(encode(hamming_code, msg)) in book


def test_encode_with_raw_generator(hamming):
    G, perm = systematic_generator(hamming)
    c = LinearCode.from_parity_check(hamming)
    msg = [1, 0, 1, 1]
    assert np.array_equal(encode(G, msg, perm), encode(c, msg))
    with pytest.raises(ValueError):
        encode(G, msg)
    with pytest.raises(ValueError):
        encode(c, [1, 0])


@given(st.lists(st.integers(0, 1), min_size=170, max_size=170),
       st.lists(st.integers(0, 1), min_size=170, max_size=170))
@settings(max_examples=40, deadline=None)
def test_encode_linear(code_243, m1, m2):
    m1, m2 = np.array(m1, dtype=np.uint8), np.array(m2, dtype=np.uint8)
    c = encode(code_243, m1 ^ m2)
    assert np.array_equal(c, encode(code_243, m1) ^ encode(code_243, m2))
    assert not syndrome(code_243.H, c).any()


def test_encode_batch(code_243):
    rng = np.random.default_rng(1)
    msgs = rng.integers(0, 2, (5, code_243.k), dtype=np.uint8)
    batch = encode(code_243, msgs)
    for m, w in zip(msgs, batch):
        assert np.array_equal(encode(code_243, m), w)


def test_syndrome_examples(hamming):
    assert not syndrome(hamming, np.zeros(7)).any()
    assert syndrome(hamming, [1, 0, 0, 0, 0, 0, 0]).tolist() == [1, 1, 1]
    with pytest.raises(ValueError):
        syndrome(hamming, [1, 0])


def test_hamming_distance():
    x = [0, 1, 1, 0]
    assert hamming_distance(x, x) == 0
    assert hamming_distance([0] * 7, [1, 1, 1, 0, 1, 0, 0]) == 4
    with pytest.raises(ValueError):
        hamming_distance([0], [0, 1])


def test_hamming_min_distance():
    book = hamming_codebook()
    assert min(hamming_distance(a, b) for a, b in itertools.combinations(book, 2)) == 3


def test_alist_example():
    text = export_alist([[1, 1, 0], [0, 1, 1]])
    assert text.split("\n")[:-1] == ["3 2", "2 2", "1 2 1", "2 2", "1 0", "1 2", "2 0", "1 2", "2 3"]


def test_alist_roundtrip(hamming):
    text = export_alist(hamming)
    back = import_alist(text)
    assert back == hamming
    assert export_alist(back) == text


def test_alist_unpadded():
    text = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n"
    assert import_alist(text) == ParityCheckMatrix([[1, 1, 0], [0, 1, 1]])


@pytest.mark.parametrize("text", [
    "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2\n",      # row weight 2 but one index
    "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n3 0\n1 2\n2 3\n",    # row index 3 > M
    "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 1\n2 0\n1 2\n2 3\n",    # duplicate
    "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 3\n2 3\n",    # columns disagree with rows
    "3 2\n2 2\n1 2\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n",      # too few column weights
    "3 2\n",
    "x y\n",
])
def test_alist_rejects(text):
    with pytest.raises(ValueError):
        import_alist(text)


@pytest.mark.parametrize("family, base", [("field", 3), ("ring", 4)])
def test_alist_roundtrip_graph(family, base):
    H = parity_check_from_graph(cached_graph(family, base))
    text = export_alist(H)
    assert export_alist(import_alist(text)) == text


def test_rate_report_examples():
    r = rate_report(cached_graph("field", 5))
    assert float(r.design_rate) == 0.8 and float(r.graph_rate) == 0.8
    g = cached_graph("ring", 5, canonical_restriction(build_ring(5), 16))
    r = rate_report(g)
    assert r.design_rate == r.graph_rate and float(r.design_rate) == 0.6875
    g = cached_graph("ring", 3, (0, 1, 2))
    assert rate_report(g).design_rate == 0


def test_rate_report_rank_based(hamming):
    r = rate_report(hamming)
    assert (r.n, r.checks, r.rank, r.k) == (7, 3, 3, 4)
    assert not r.discrepancy
    r = rate_report(cached_graph("field", 3))
    assert r.rank == 73 and r.k == 170 and r.discrepancy
    assert r.true_rate >= r.design_rate


def test_uncoded():
    c = LinearCode.uncoded(5)
    assert c.k == 5 and c.rate == 1
    assert encode(c, [1, 0, 1, 1, 0]).tolist() == [1, 0, 1, 1, 0]
