"""c-, d-, f- and g-vectors by recursion and from seeds, plus verification checks.

All matrices hold the vectors as *columns*: ``M.column(i)`` is the vector
attached to the i-th cluster variable (0-based column index).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exchange import ExchangeMatrix, _coerce, bipartite_sign, finite_type_classification, mutate_matrix, source_sink_words
from .polynomial import LaurentPoly, denominator_vector
from .seed import Seed, SeedClass, enumerate_seeds, initial_seed


def _pos(a: int) -> int:
    return a if a > 0 else 0


@dataclass(frozen=True)
class VectorMatrix:
    kind: str  # "C", "D", "F" or "G"
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_columns(cls, kind: str, columns: Sequence[Sequence[int]]) -> VectorMatrix:
        return cls(kind, tuple(zip(*columns)) if columns else ())

    @property
    def n(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.n)]

    def transpose(self) -> VectorMatrix:
        return VectorMatrix(self.kind, tuple(zip(*self.entries)))

    def positive_part(self) -> VectorMatrix:
        return VectorMatrix(self.kind, tuple(tuple(_pos(v) for v in row) for row in self.entries))

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other) -> bool:
        if isinstance(other, VectorMatrix):
            return self.entries == other.entries
        return self.entries == tuple(tuple(r) for r in other)

    def __hash__(self) -> int:
        return hash(self.entries)


@dataclass(frozen=True)
class WalkState:
    """Everything the recursions carry from vertex to vertex."""

    B: ExchangeMatrix  # exchange matrix at the current vertex
    B0: ExchangeMatrix  # initial exchange matrix
    C: tuple[tuple[int, ...], ...]  # columns
    D: tuple[tuple[int, ...], ...]
    F: tuple[tuple[int, ...], ...]
    G: tuple[tuple[int, ...], ...]

    @classmethod
    def initial(cls, B) -> WalkState:
        B = _coerce(B)
        n = B.n
        e = [tuple(1 if r == i else 0 for r in range(n)) for i in range(n)]
        return cls(
            B, B,
            tuple(e),
            tuple(tuple(-v for v in col) for col in e),
            tuple((0,) * n for _ in range(n)),
            tuple(e),
        )

    def matrix(self, kind: str) -> VectorMatrix:
        return VectorMatrix.from_columns(kind, getattr(self, kind))

    def step(self, k: int) -> WalkState:
        n = self.B.n
        if not 1 <= k <= n:
            raise IndexError(f"direction {k} out of range 1..{n}")
        kk = k - 1
        b = self.B.b
        b0 = self.B0.b
        ck = self.C[kk]

        # c-vectors: tropical exponents of the coefficient mutation rule
        C = list(self.C)
        for j in range(n):
            if j == kk:
                C[j] = tuple(-v for v in ck)
            else:
                bkj = b[kk][j]
                C[j] = tuple(cj + _pos(bkj) * c + bkj * _pos(-c) for cj, c in zip(self.C[j], ck))

        def combo(vectors, weights):
            return [sum(w * v[r] for w, v in zip(weights, vectors)) for r in range(n)]

        col_pos = [_pos(b[j][kk]) for j in range(n)]
        col_neg = [_pos(-b[j][kk]) for j in range(n)]

        d1, d2 = combo(self.D, col_pos), combo(self.D, col_neg)
        dk = tuple(-a + max(p, q) for a, p, q in zip(self.D[kk], d1, d2))

        f1, f2 = combo(self.F, col_pos), combo(self.F, col_neg)
        fk = tuple(
            -a + max(_pos(c) + p, _pos(-c) + q) for a, c, p, q in zip(self.F[kk], ck, f1, f2)
        )

        g1 = combo(self.G, col_pos)
        ck_pos = [_pos(c) for c in ck]
        gk = tuple(
            -self.G[kk][i] + g1[i] - sum(b0[i][l] * ck_pos[l] for l in range(n)) for i in range(n)
        )

        def replace(cols, v):
            return cols[:kk] + (v,) + cols[kk + 1:]

        return WalkState(
            mutate_matrix(self.B, k), self.B0, tuple(C),
            replace(self.D, dk), replace(self.F, fk), replace(self.G, gk),
        )


def walk(B, word: Sequence[int]) -> WalkState:
    state = WalkState.initial(B)
    for k in word:
        state = state.step(k)
    return state


def walk_states(B, word: Sequence[int]) -> list[WalkState]:
    state = WalkState.initial(B)
    out = [state]
    for k in word:
        state = state.step(k)
        out.append(state)
    return out


def c_matrix(B, word: Sequence[int]) -> VectorMatrix:
    return walk(B, word).matrix("C")


def d_matrix_recursive(B, word: Sequence[int]) -> VectorMatrix:
    return walk(B, word).matrix("D")


def f_matrix_recursive(B, word: Sequence[int]) -> VectorMatrix:
    return walk(B, word).matrix("F")


def g_matrix(B, word: Sequence[int]) -> VectorMatrix:
    return walk(B, word).matrix("G")


def d_matrix_of_seed(seed: Seed) -> VectorMatrix:
    xs = seed.variables[: seed.n]
    return VectorMatrix.from_columns("D", [denominator_vector(p, xs) for p in seed.x])


def f_matrix_of_seed(seed: Seed) -> VectorMatrix:
    """Maximal y-degrees of the F-polynomials, by definition."""
    ys = [f"y{i}" for i in range(1, seed.n + 1)]
    return VectorMatrix.from_columns("F", [[F.max_degree(y) for y in ys] for F in seed.F_polynomials()])


def c_matrix_of_seed(seed: Seed) -> VectorMatrix:
    """Exponent vectors of the tropical coefficients."""
    return VectorMatrix.from_columns("C", [t.exps for t in seed.y])


def d_matrix_from_seed(B, word: Sequence[int]) -> VectorMatrix:
    return d_matrix_of_seed(initial_seed(B).apply(word))


def F_polynomials(B, word: Sequence[int]) -> tuple[LaurentPoly, ...]:
    return initial_seed(B).apply(word).F_polynomials()


def principal_grading(B) -> dict[str, tuple[int, ...]]:
    """``deg x_i = e_i`` and ``deg y_i = -(i-th column of B)``."""
    B = _coerce(B)
    n = B.n
    grading = {}
    for i in range(n):
        grading[f"x{i + 1}"] = tuple(1 if r == i else 0 for r in range(n))
        grading[f"y{i + 1}"] = tuple(-v for v in B.column(i))
    return grading


def g_matrix_of_seed(seed: Seed, B0) -> VectorMatrix:
    """Degrees of the cluster variables; raises if one is not homogeneous."""
    grading = principal_grading(B0)
    cols = []
    for p in seed.x:
        degs = p.degree_vectors(grading)
        if len(degs) != 1:
            raise ValueError(f"{p} is not homogeneous: degrees {sorted(degs)}")
        cols.append(degs.pop())
    return VectorMatrix.from_columns("G", cols)


# -- structured reports ----------------------------------------------------


@dataclass
class Report:
    check: str
    B: ExchangeMatrix
    word: tuple[int, ...] = ()
    failures: list = field(default_factory=list)
    checked: int = 0
    advisory: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **info) -> None:
        self.failures.append(info)

    def merge(self, other: Report) -> None:
        self.failures.extend(other.failures)
        self.checked += other.checked

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "B": self.B.to_json(),
            "word": list(self.word),
            "pass": self.passed,
            "failures": self.failures,
            "checked": self.checked,
        }
        if self.advisory:
            out["advisory"] = True
        if self.notes:
            out["notes"] = self.notes
        return out


def _in_supported_regime(B: ExchangeMatrix) -> bool:
    return B.n <= 2 or finite_type_classification(B).is_finite


def verify_fd(B, word: Sequence[int] = (), *, every_vertex: bool = True) -> Report:
    """Check ``F = [D]_+`` entrywise along ``word`` (or only at its endpoint)."""
    B = _coerce(B)
    rep = Report("verify-fd", B, tuple(word), advisory=not _in_supported_regime(B))
    states = walk_states(B, word) if every_vertex else [walk(B, word)]
    for pos, st in enumerate(states):
        F = st.matrix("F")
        Dp = st.matrix("D").positive_part()
        rep.checked += 1
        if F.entries != Dp.entries:
            rep.fail(vertex=pos if every_vertex else len(word), F=F.as_lists(), D_plus=Dp.as_lists())
    return rep


def verify_fd_all_seeds(B, cap: int = 10_000) -> Report:
    """``F = [D]_+`` at every non-labeled seed, recursions and seed data both."""
    B = _coerce(B)
    rep = Report("verify-fd", B, advisory=not _in_supported_regime(B))
    for cls in enumerate_seeds(B, cap):
        st = walk(B, cls.word)
        F_rec = st.matrix("F")
        F_def = f_matrix_of_seed(cls.seed)
        D_def = d_matrix_of_seed(cls.seed)
        rep.checked += 1
        if F_rec != F_def:
            rep.fail(word=list(cls.word), reason="f-recursion differs from F-polynomial degrees",
                     recursive=F_rec.as_lists(), definition=F_def.as_lists())
        if st.matrix("D") != D_def:
            rep.fail(word=list(cls.word), reason="d-recursion differs from denominators",
                     recursive=st.matrix("D").as_lists(), definition=D_def.as_lists())
        if F_def.entries != D_def.positive_part().entries:
            rep.fail(word=list(cls.word), reason="F != [D]_+", F=F_def.as_lists(), D=D_def.as_lists())
    return rep


def verify_duality(B, word: Sequence[int]) -> Report:
    """Compare D and F at the end of ``word`` with the transposed reverse walk.

    The reverse walk starts at the far vertex with initial matrix ``B_t^T``
    and follows ``reversed(word)`` back to the start.
    """
    B = _coerce(B)
    word = tuple(word)
    rep = Report("verify-duality", B, word, advisory=not _in_supported_regime(B))
    fwd = walk(B, word)
    back = walk(fwd.B.transpose(), tuple(reversed(word)))
    for kind in ("D", "F"):
        a = fwd.matrix(kind)
        b = back.matrix(kind).transpose()
        rep.checked += 1
        if a.entries != b.entries:
            rep.fail(kind=kind, forward=a.as_lists(), reverse_transposed=b.as_lists())
    return rep


def detect_initial_d_columns(D: VectorMatrix | Sequence[Sequence[int]]) -> set[tuple[int, int]]:
    """Locate the initial d-vectors of a cluster from its non-negative ones.

    Returns pairs ``(i, j)`` (0-based) meaning column ``j`` is ``-e_i``.
    Row ``i`` is forced initial when every non-negative column vanishes in
    row ``i``; the remaining columns must then be exactly those ``-e_i``.
    """
    if not isinstance(D, VectorMatrix):
        D = VectorMatrix("D", tuple(tuple(r) for r in D))
    n = D.n
    cols = D.columns()
    nonneg = [j for j, c in enumerate(cols) if all(v >= 0 for v in c)]
    rest = [j for j in range(n) if j not in nonneg]
    forced = [i for i in range(n) if all(cols[j][i] == 0 for j in nonneg)]
    if len(forced) != len(rest):
        raise ValueError(f"{len(rest)} non-initial-looking columns but {len(forced)} forced rows in {D.as_lists()}")
    out = set()
    for i in forced:
        target = tuple(-1 if r == i else 0 for r in range(n))
        j = next((j for j in rest if cols[j] == target), None)
        if j is None:
            raise ValueError(f"no column equals -e_{i + 1} in {D.as_lists()}")
        out.add((i, j))
    return out


def initial_rows_from_f_vectors(fvecs: Iterable[Sequence[int]], n: int) -> list[int]:
    """Rows (0-based) whose initial variable belongs to a cluster, given its f-vectors.

    Zero f-vectors mark initial variables; which ones is read off the
    nonzero f-vectors, treated as d-vectors.
    """
    fvecs = [tuple(f) for f in fvecs]
    nonzero = [f for f in fvecs if any(f)]
    return [i for i in range(n) if all(f[i] == 0 for f in nonzero)]


def f_multiset(F: VectorMatrix) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(F.columns()))


def verify_uniqueness(B, cap: int = 10_000) -> Report:
    """Distinct non-labeled clusters must have distinct multisets of f-vectors."""
    B = _coerce(B)
    rep = Report("verify-uniqueness", B, advisory=not _in_supported_regime(B))
    classes = enumerate_seeds(B, cap)
    by_key: dict[tuple, list[SeedClass]] = {}
    clusters = set()
    for cls in classes:
        cluster = frozenset(cls.seed.x)
        if cluster in clusters:
            continue  # same cluster, different seed: not a collision
        clusters.add(cluster)
        key = f_multiset(f_matrix_of_seed(cls.seed))
        by_key.setdefault(key, []).append(cls)
        rep.checked += 1
    for key, group in by_key.items():
        if len(group) > 1:
            rep.fail(f_vectors=[list(v) for v in key], words=[list(c.word) for c in group])
    rep.notes["clusters"] = len(clusters)
    rep.notes["distinct_f_multisets"] = len(by_key)
    return rep


def rank2_word(n: int) -> tuple[int, ...]:
    """Word from ``t_0`` to ``t_n`` on the rank-2 strip ``... -2- t_0 -1- t_1 -2- ...``."""
    first, second = (1, 2) if n >= 0 else (2, 1)
    return tuple(first if i % 2 == 0 else second for i in range(abs(n)))


def rank2_matrix(b: int, c: int) -> ExchangeMatrix:
    return ExchangeMatrix(((0, b), (-c, 0)))


def _window_states(B: ExchangeMatrix, window: int) -> list[tuple[int, WalkState]]:
    """``(n, state)`` for every vertex ``t_n`` with ``|n| <= window`` on the rank-2 strip."""
    out = []
    for sign in (1, -1):
        for pos, st in enumerate(walk_states(B, rank2_word(sign * window))):
            if sign == -1 and pos == 0:
                continue
            out.append((sign * pos, st))
    return out


def verify_fd_window(B, window: int = 8) -> Report:
    """``F = [D]_+`` at every vertex ``t_n``, ``|n| <= window``, of a rank-2 pattern."""
    B = _coerce(B)
    if B.n != 2:
        raise ValueError("the strip window is only defined in rank 2")
    rep = Report("verify-fd", B, notes={"window": window})
    for vertex, st in _window_states(B, window):
        rep.checked += 1
        F, Dp = st.matrix("F"), st.matrix("D").positive_part()
        if F.entries != Dp.entries:
            rep.fail(vertex=vertex, F=F.as_lists(), D_plus=Dp.as_lists())
    return rep


def verify_uniqueness_window(B, window: int = 8) -> Report:
    """Injectivity of cluster -> f-vector multiset over the window ``|n| <= window``.

    Clusters are identified by their d-vector multisets, which determine
    rank-2 cluster variables; in finite type the strip is periodic and
    repeated clusters are collapsed first.
    """
    B = _coerce(B)
    if B.n != 2:
        raise ValueError("the strip window is only defined in rank 2")
    rep = Report("verify-uniqueness", B, notes={"window": window})
    clusters: dict[tuple, tuple] = {}
    for vertex, st in _window_states(B, window):
        clusters.setdefault(tuple(sorted(st.D)), (vertex, tuple(sorted(st.F))))
    by_f: dict[tuple, list[int]] = {}
    for vertex, fkey in clusters.values():
        by_f.setdefault(fkey, []).append(vertex)
        rep.checked += 1
    for fkey, verts in by_f.items():
        if len(verts) > 1:
            rep.fail(f_vectors=[list(v) for v in fkey], vertices=sorted(verts))
    rep.notes["clusters"] = len(clusters)
    return rep


def verify_fd_rank2(b: int, c: int, window: int = 8) -> Report:
    return verify_fd_window(rank2_matrix(b, c), window)


def verify_uniqueness_rank2(b: int, c: int, window: int = 8) -> Report:
    return verify_uniqueness_window(rank2_matrix(b, c), window)


def reduced_words(n: int, max_length: int) -> Iterable[tuple[int, ...]]:
    """All words without immediate repetitions, shortest first."""
    layer = [()]
    yield ()
    for _ in range(max_length):
        layer = [w + (k,) for w in layer for k in range(1, n + 1) if not w or w[-1] != k]
        yield from layer


def bipartite_belt_variables(B, max_steps: int = 200) -> set[LaurentPoly]:
    """Cluster variables on the bipartite belt through the initial (bipartite) seed.

    Alternates ``mu_+`` and ``mu_-`` until the labeled seed repeats.
    """
    B = _coerce(B)
    eps = bipartite_sign(B)
    if eps is None:
        raise ValueError("initial matrix is not bipartite")
    plus, minus = source_sink_words(B, eps)
    s = initial_seed(B)
    start = s.canonical_key()
    found = set(s.x)
    for step in range(max_steps):
        s = s.apply(plus if step % 2 == 0 else minus)
        found.update(s.x)
        if step % 2 == 1 and s.canonical_key() == start:
            break
    return found


def random_word(n: int, length: int, rng: random.Random) -> tuple[int, ...]:
    """Reduced random word (no immediate repetitions)."""
    word: list[int] = []
    for _ in range(length):
        choices = [k for k in range(1, n + 1) if not word or k != word[-1]]
        word.append(rng.choice(choices))
    return tuple(word)


def count_vectors(classes: Sequence[SeedClass], kind: str = "D") -> Counter:
    fn = {"D": d_matrix_of_seed, "F": f_matrix_of_seed}[kind]
    return Counter(v for cls in classes for v in fn(cls.seed).columns())
