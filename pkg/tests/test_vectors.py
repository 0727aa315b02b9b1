import json
import random

import pytest

from clusterfd.exchange import dynkin_exchange_matrix, mutate_word
from clusterfd.seed import cluster_variables, enumerate_seeds, initial_seed, seeds_along
from clusterfd.vectors import (
    F_polynomials,
    VectorMatrix,
    WalkState,
    bipartite_belt_variables,
    c_matrix,
    c_matrix_of_seed,
    d_matrix_from_seed,
    d_matrix_of_seed,
    d_matrix_recursive,
    detect_initial_d_columns,
    f_matrix_of_seed,
    f_matrix_recursive,
    g_matrix,
    g_matrix_of_seed,
    initial_rows_from_f_vectors,
    random_word,
    rank2_matrix,
    rank2_word,
    reduced_words,
    verify_duality,
    verify_fd,
    verify_fd_all_seeds,
    verify_fd_rank2,
    verify_uniqueness,
    verify_uniqueness_rank2,
    walk,
    walk_states,
)

from golden import A2, A2_WORD, A2_D_ROWS, A2_F_ROWS, A2_FMAT_ROWS, f_entry

FINITE = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]
RANK2 = [(1, 1), (1, 2), (1, 3), (2, 2), (1, 4), (2, 3), (3, 3), (4, 1), (3, 2)]


def identity(n, sign=1):
    return [[sign * int(i == j) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("t", range(6))
def test_a2_golden_vectors(t):
    w = A2_WORD[:t]
    assert d_matrix_recursive(A2, w) == A2_D_ROWS[t]
    assert f_matrix_recursive(A2, w) == A2_FMAT_ROWS[t]
    assert d_matrix_from_seed(A2, w) == A2_D_ROWS[t]
    assert F_polynomials(A2, w) == tuple(f_entry(e) for e in A2_F_ROWS[t])
    assert verify_fd(A2, w).passed


@pytest.mark.parametrize("label", FINITE + ["E6"])
def test_initial_conditions(label):
    B = dynkin_exchange_matrix(label)
    n = B.n
    st = WalkState.initial(B)
    assert st.matrix("C") == identity(n)
    assert st.matrix("G") == identity(n)
    assert st.matrix("D") == identity(n, -1)
    assert st.matrix("F") == [[0] * n for _ in range(n)]


def test_c_examples():
    assert c_matrix(A2, ()) == identity(2)
    assert c_matrix(A2, (1,)).column(0) == (-1, 0)


def test_g_examples():
    assert g_matrix(A2, ()) == identity(2)
    assert g_matrix(A2, (1,)).column(0) == (-1, 1)


def test_rank2_cross_path():
    B = rank2_matrix(4, 1)
    assert d_matrix_from_seed(B, (1, 2, 1)) == d_matrix_recursive(B, (1, 2, 1))


def _walk_cases():
    rng = random.Random(2024)
    cases = []
    for label in FINITE:
        B = dynkin_exchange_matrix(label)
        for _ in range(6):
            cases.append((label, B, random_word(B.n, 10, rng)))
    for b, c in [(1, 4), (2, 2), (4, 1)]:
        for _ in range(3):
            cases.append((f"{b},{c}", rank2_matrix(b, c), random_word(2, 6, rng)))
    return cases


@pytest.mark.parametrize("label,B,word", _walk_cases())
def test_recursions_match_definitions(label, B, word):
    """c, d, f, g recursions against tropical exponents, denominators, F-degrees and gradings."""
    for st, seed in zip(walk_states(B, word), seeds_along(B, word)):
        assert st.B == seed.B
        assert st.matrix("C") == c_matrix_of_seed(seed)
        assert st.matrix("D") == d_matrix_of_seed(seed)
        assert st.matrix("F") == f_matrix_of_seed(seed)
        assert st.matrix("G") == g_matrix_of_seed(seed, B)


@pytest.mark.parametrize("label", FINITE)
def test_verify_fd_all_seeds(label):
    B = dynkin_exchange_matrix(label)
    rep = verify_fd_all_seeds(B)
    assert rep.passed, rep.failures
    assert rep.checked == len(enumerate_seeds(B))
    assert not rep.advisory


@pytest.mark.parametrize("b,c", RANK2)
def test_verify_fd_rank2(b, c):
    rep = verify_fd_rank2(b, c, window=8)
    assert rep.passed and rep.checked == 17


def test_verify_fd_rank2_all_short_words():
    B = rank2_matrix(2, 3)
    for w in reduced_words(2, 8):
        assert verify_fd(B, w).passed


def test_verify_fd_outside_supported_regime_is_advisory():
    markov = [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]
    assert verify_fd(markov, (1, 2)).advisory


@pytest.mark.parametrize("label", ["A2", "A3", "B3", "C3", "D4", "G2"])
def test_duality(label):
    rng = random.Random(label)
    B = dynkin_exchange_matrix(label)
    assert verify_duality(B, ()).passed
    for _ in range(10):
        rep = verify_duality(B, random_word(B.n, rng.randint(1, 10), rng))
        assert rep.passed, rep.failures


def test_duality_a2_golden_row():
    assert verify_duality(A2, (1, 2)).passed
    back = walk(walk(A2, (1, 2)).B.transpose(), (2, 1))
    assert back.matrix("D").transpose() == A2_D_ROWS[2]


@pytest.mark.parametrize("label", FINITE)
def test_nonnegative_non_initial_d_vectors(label):
    B = dynkin_exchange_matrix(label)
    n = B.n
    initial = {tuple(-int(r == i) for r in range(n)) for i in range(n)}
    for cls in enumerate_seeds(B):
        st = walk(B, cls.word)
        for d, f in zip(st.D, st.F):
            if d in initial:
                assert not any(f)
            else:
                assert all(v >= 0 for v in d) and any(d)
                assert any(f)


def test_f_zero_iff_initial_in_rank2():
    for b, c in [(1, 4), (2, 3), (3, 3)]:
        for n in range(-8, 9):
            st = walk(rank2_matrix(b, c), rank2_word(n))
            for d, f in zip(st.D, st.F):
                assert (not any(f)) == (min(d) < 0)


def test_rank2_companions_of_initial_variables():
    # the non-initial partner of x1 (at t_1) and of x2 (at t_-1) always differ
    for b, c in RANK2:
        D1 = walk(rank2_matrix(b, c), rank2_word(1)).matrix("D")
        Dm1 = walk(rank2_matrix(b, c), rank2_word(-1)).matrix("D")
        assert D1 == [[1, 0], [0, -1]]
        assert Dm1 == [[-1, 0], [0, 1]]
        assert D1.column(0) == (1, 0) and Dm1.column(1) == (0, 1)


def test_rank2_word():
    assert rank2_word(0) == ()
    assert rank2_word(3) == (1, 2, 1)
    assert rank2_word(-4) == (2, 1, 2, 1)


def test_detect_initial_examples():
    assert detect_initial_d_columns([[1, 0], [0, -1]]) == {(1, 1)}
    assert detect_initial_d_columns([[-1, 0], [0, -1]]) == {(0, 0), (1, 1)}
    assert detect_initial_d_columns([[-1, 0], [0, 1]]) == {(0, 0)}
    assert detect_initial_d_columns(A2_D_ROWS[2]) == set()
    with pytest.raises(ValueError):
        detect_initial_d_columns([[1, -1], [0, -1]])


@pytest.mark.parametrize("label", ["A3", "B3", "D4"])
def test_detect_initial_over_all_clusters(label):
    B = dynkin_exchange_matrix(label)
    n = B.n
    for cls in enumerate_seeds(B):
        D = d_matrix_of_seed(cls.seed)
        truth = {(i, j) for j in range(n) for i in range(n) if cls.seed.x[j] == initial_seed(B).x[i]}
        assert detect_initial_d_columns(D) == truth
        F = f_matrix_of_seed(cls.seed)
        assert initial_rows_from_f_vectors(F.columns(), n) == sorted(i for i, _ in truth)


@pytest.mark.parametrize("label,clusters", [("A1", 2), ("A2", 5), ("A3", 14), ("B2", 6), ("C3", 20), ("D4", 50)])
def test_uniqueness(label, clusters):
    rep = verify_uniqueness(dynkin_exchange_matrix(label))
    assert rep.passed
    assert rep.notes["clusters"] == clusters == rep.notes["distinct_f_multisets"]


def test_uniqueness_a2_multisets():
    seen = set()
    for cls in enumerate_seeds(A2):
        seen.add(tuple(sorted(f_matrix_of_seed(cls.seed).columns())))
    assert seen == {((0, 0), (0, 0)), ((0, 0), (1, 0)), ((1, 0), (1, 1)), ((0, 1), (1, 1)), ((0, 0), (0, 1))}


def test_uniqueness_reducible_type():
    rep = verify_uniqueness([[0, 0], [0, 0]])
    assert rep.passed and rep.notes["clusters"] == 4


@pytest.mark.parametrize("b,c", [(1, 4), (2, 2), (2, 3), (3, 3), (1, 1)])
def test_uniqueness_rank2_window(b, c):
    assert verify_uniqueness_rank2(b, c, window=8).passed


@pytest.mark.parametrize("label", ["A3", "A4", "B3", "C3", "D4", "G2"])
def test_bipartite_belt_reaches_every_variable(label):
    B = dynkin_exchange_matrix(label)
    assert bipartite_belt_variables(B) == cluster_variables(enumerate_seeds(B))


def test_vector_matrix_helpers():
    M = VectorMatrix.from_columns("D", [(1, 0), (-1, 2)])
    assert M == [[1, -1], [0, 2]]
    assert M.transpose() == [[1, 0], [-1, 2]]
    assert M.positive_part() == [[1, 0], [0, 2]]
    assert M.columns() == [(1, 0), (-1, 2)]


def test_report_json():
    rep = verify_duality(dynkin_exchange_matrix("B3"), (1, 2, 3))
    data = json.loads(json.dumps(rep.to_json()))
    assert {"check", "B", "word", "pass", "failures"} <= set(data)
    assert data["pass"] is True and data["word"] == [1, 2, 3]


def test_walk_rejects_bad_direction():
    with pytest.raises(IndexError):
        walk(A2, (1, 3))


def test_mutated_initial_matrix():
    B = mutate_word(dynkin_exchange_matrix("D4"), (2, 1))
    assert verify_fd_all_seeds(B).passed
