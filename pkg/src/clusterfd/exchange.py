"""Exchange matrices: skew-symmetrizability, mutation, bipartite structure,
Cartan companions and finite-type recognition.

Directions ``k`` in the public API are 1-based, matching the usual
mathematical indexing; matrix entries are accessed 0-based as nested tuples.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_CAP = 50_000


def _pos(a: int) -> int:
    return a if a > 0 else 0


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    return m


def check_skew_symmetrizable(rows: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Return the minimal positive integral skew-symmetrizer of ``rows``, or None.

    The symmetrizer ``d`` satisfies ``d_i * b_ij == -d_j * b_ji``.  Each
    connected component of the underlying graph is solved independently by
    propagating rational ratios and clearing denominators, so the result is
    componentwise smallest.
    """
    m = as_matrix(rows)
    n = len(m)
    for i in range(n):
        if m[i][i] != 0:
            return None
        for j in range(n):
            a, b = m[i][j], m[j][i]
            if (a == 0) != (b == 0) or (a and (a > 0) == (b > 0)):
                return None
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        comp = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if m[i][j] == 0:
                    continue
                want = d[i] * m[i][j] / -m[j][i]
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    return None
        lcm = 1
        for i in comp:
            lcm = lcm * d[i].denominator // math.gcd(lcm, d[i].denominator)
        ints = [int(d[i] * lcm) for i in comp]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)
    return tuple(int(v) for v in d)


@dataclass(frozen=True)
class ExchangeMatrix:
    """A skew-symmetrizable integer matrix ``B = (b_ij)``."""

    b: Matrix
    symmetrizer: tuple[int, ...] = field(default=None, compare=False)

    def __post_init__(self):
        b = as_matrix(self.b)
        object.__setattr__(self, "b", b)
        sym = check_skew_symmetrizable(b)
        if sym is None:
            raise ValueError(f"matrix is not skew-symmetrizable: {b}")
        if self.symmetrizer is not None:
            given = tuple(self.symmetrizer)
            if len(given) != len(b) or any(v <= 0 for v in given) or any(
                given[i] * b[i][j] != -given[j] * b[j][i] for i in range(len(b)) for j in range(len(b))
            ):
                raise ValueError(f"{given} is not a skew-symmetrizer of {b}")
            sym = given
        object.__setattr__(self, "symmetrizer", sym)

    @property
    def n(self) -> int:
        return len(self.b)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.b[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.b)

    def transpose(self) -> ExchangeMatrix:
        return ExchangeMatrix(tuple(zip(*self.b)))

    def __neg__(self) -> ExchangeMatrix:
        return ExchangeMatrix(tuple(tuple(-v for v in row) for row in self.b))

    def mutate(self, k: int) -> ExchangeMatrix:
        return mutate_matrix(self, k)

    def permute(self, perm: Sequence[int]) -> ExchangeMatrix:
        """Matrix with entries ``b[perm[i]][perm[j]]`` (0-based permutation)."""
        return ExchangeMatrix(tuple(tuple(self.b[p][q] for q in perm) for p in perm))

    def to_json(self) -> dict:
        return {"n": self.n, "b": [list(row) for row in self.b]}

    @classmethod
    def from_json(cls, data) -> ExchangeMatrix:
        if isinstance(data, dict):
            rows = data["b"]
            if "n" in data and int(data["n"]) != len(rows):
                raise ValueError(f"declared n={data['n']} but matrix has {len(rows)} rows")
        else:
            rows = data
        return cls(as_matrix(rows))

    def __str__(self) -> str:
        return str([list(r) for r in self.b])


def _coerce(B) -> ExchangeMatrix:
    return B if isinstance(B, ExchangeMatrix) else ExchangeMatrix(as_matrix(B))


def mutate_matrix(B, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction ``k`` (1-based)."""
    B = _coerce(B)
    n = B.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    k -= 1
    b = B.b
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + _pos(b[i][k]) * b[k][j] + b[i][k] * _pos(-b[k][j]))
        out.append(tuple(row))
    return ExchangeMatrix(tuple(out), B.symmetrizer)


def mutate_word(B, word: Sequence[int]) -> ExchangeMatrix:
    B = _coerce(B)
    for k in word:
        B = mutate_matrix(B, k)
    return B


def bipartite_sign(B) -> tuple[int, ...] | None:
    """Sign function ``eps`` with ``b_ij > 0 => eps(i) = 1, eps(j) = -1``, or None.

    Each connected component is 2-coloured; the colouring is oriented by its
    first arrow and then checked against every arrow.  Isolated vertices get +1.
    """
    B = _coerce(B)
    n, b = B.n, B.b
    eps = [0] * n
    for root in range(n):
        if eps[root]:
            continue
        eps[root] = 1
        comp = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if b[i][j] == 0:
                    continue
                if eps[j] == 0:
                    eps[j] = -eps[i]
                    comp.append(j)
                    queue.append(j)
                elif eps[j] == eps[i]:
                    return None
        # orient so that arrows go from +1 to -1
        flip = next((eps[i] == -1 for i in comp for j in comp if b[i][j] > 0), False)
        if flip:
            for i in comp:
                eps[i] = -eps[i]
        for i in comp:
            for j in comp:
                if b[i][j] > 0 and not (eps[i] == 1 and eps[j] == -1):
                    return None
    return tuple(eps)


def source_sink_words(B, eps: Sequence[int] | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The composite mutations ``mu_+`` and ``mu_-`` as sorted 1-based words."""
    B = _coerce(B)
    if eps is None:
        eps = bipartite_sign(B)
        if eps is None:
            raise ValueError(f"matrix is not bipartite: {B}")
    plus = tuple(k + 1 for k in range(B.n) if eps[k] == 1)
    minus = tuple(k + 1 for k in range(B.n) if eps[k] == -1)
    for word in (plus, minus):
        for i, j in itertools.combinations(word, 2):
            if B.b[i - 1][j - 1] != 0:
                raise ValueError(f"directions {i} and {j} share a sign but are joined in {B}")
    return plus, minus


def cartan_companion(B) -> Matrix:
    B = _coerce(B)
    n = B.n
    return tuple(tuple(2 if i == j else -abs(B.b[i][j]) for j in range(n)) for i in range(n))


def _det(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _components(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(adj)
    seen = [False] * n
    comps = []
    for r in range(n):
        if seen[r]:
            continue
        seen[r] = True
        comp, stack = [], [r]
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and adj[i][j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def is_finite_cartan(A: Sequence[Sequence[int]]) -> bool:
    """All principal minors positive."""
    n = len(A)
    for r in range(1, n + 1):
        for idx in itertools.combinations(range(n), r):
            if _det([[A[i][j] for j in idx] for i in idx]) <= 0:
                return False
    return True


def _classify_connected(A: Sequence[Sequence[int]]) -> str | None:
    n = len(A)
    if n == 1:
        return "A1"
    prod = {}
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] or A[j][i]:
                prod[(i, j)] = A[i][j] * A[j][i]
    deg = [sum(1 for e in prod if i in e) for i in range(n)]
    if len(prod) != n - 1:
        return None  # a cycle; never finite
    heavy = [(e, p) for e, p in prod.items() if p > 1]
    if n == 2:
        p = next(iter(prod.values()))
        return {1: "A2", 2: "B2", 3: "G2"}.get(p)
    if max(deg) == 3:
        if heavy or deg.count(3) != 1:
            return None
        centre = deg.index(3)
        arms = []
        for start in (j for j in range(n) if (min(centre, j), max(centre, j)) in prod):
            length, prev, cur = 1, centre, start
            while deg[cur] == 2:
                nxt = next(j for j in range(n) if j not in (prev, cur) and (min(cur, j), max(cur, j)) in prod)
                prev, cur = cur, nxt
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == arms[1] == 1:
            return f"D{n}"
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return f"E{n}"
        return None
    # a path
    if not heavy:
        return f"A{n}"
    if len(heavy) != 1:
        return None
    (i, j), p = heavy[0]
    if p != 2:
        return None
    ends = {k for k in range(n) if deg[k] == 1}
    if n == 4 and not ({i, j} & ends):
        return "F4"
    if {i, j} & ends:
        end = i if i in ends else j
        other = j if end == i else i
        # B_n: the short end node's row carries the -2
        return f"B{n}" if A[end][other] == -2 else f"C{n}"
    return None


def classify_cartan(A: Sequence[Sequence[int]]) -> str | None:
    """Dynkin label of a finite Cartan matrix (``"A1xB2"`` for products), else None."""
    A = as_matrix(A)
    n = len(A)
    if any(A[i][i] != 2 for i in range(n)):
        return None
    if any(A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0) for i in range(n) for j in range(n) if i != j):
        return None
    if not is_finite_cartan(A):
        return None
    labels = []
    for comp in _components(A):
        sub = [[A[i][j] for j in comp] for i in comp]
        lab = _classify_connected(sub)
        if lab is None:
            return None
        labels.append(lab)
    return "x".join(sorted(labels, key=lambda s: (s[0], int(s[1:]))))


def cartan_matrix(label: str) -> Matrix:
    """Standard (Bourbaki-numbered) Cartan matrix of an irreducible finite type."""
    kind, n = label[0].upper(), int(label[1:])
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if n < 1 or (kind in "BC" and n < 2):
        raise ValueError(label)
    if kind == "A":
        for i in range(n - 1):
            join(i, i + 1)
    elif kind in "BC":
        for i in range(n - 2):
            join(i, i + 1)
        if kind == "B":
            join(n - 2, n - 1, -1, -2)
        else:
            join(n - 2, n - 1, -2, -1)
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise ValueError(label)
        join(0, 2)
        join(1, 3)
        for i in range(2, n - 1):
            join(i, i + 1)
    elif kind == "F" and n == 4:
        join(0, 1)
        join(1, 2, -2, -1)
        join(2, 3)
    elif kind == "G" and n == 2:
        join(0, 1, -1, -3)
    else:
        raise ValueError(f"unknown Dynkin label {label}")
    return as_matrix(A)


def bipartite_matrix_from_cartan(A: Sequence[Sequence[int]]) -> ExchangeMatrix:
    """The bipartite exchange matrix whose Cartan companion is ``A``."""
    A = as_matrix(A)
    n = len(A)
    colour = [0] * n
    for comp in _components(A):
        colour[comp[0]] = 1
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] and not colour[j]:
                    colour[j] = -colour[i]
                    stack.append(j)
    return ExchangeMatrix(tuple(tuple(0 if i == j else -colour[i] * A[i][j] for j in range(n)) for i in range(n)))


def dynkin_exchange_matrix(label: str) -> ExchangeMatrix:
    """Bipartite matrix of a Dynkin label; products such as ``A1xB2`` give block-diagonal matrices."""
    blocks = [cartan_matrix(part) for part in label.split("x")]
    n = sum(len(A) for A in blocks)
    full = [[0] * n for _ in range(n)]
    off = 0
    for A in blocks:
        for i, row in enumerate(A):
            full[off + i][off:off + len(row)] = row
        off += len(A)
    return bipartite_matrix_from_cartan(full)


def _canonical_form(b: Matrix) -> Matrix:
    """Lexicographically smallest matrix over simultaneous permutations.

    Colour refinement narrows the candidates; remaining ties are permuted
    exhaustively, which is affordable at desk rank.
    """
    n = len(b)
    colours = [
        (tuple(sorted(b[i])), tuple(sorted(b[j][i] for j in range(n)))) for i in range(n)
    ]
    while True:
        sig = [
            (colours[i], tuple(sorted((b[i][j], b[j][i], colours[j]) for j in range(n) if j != i)))
            for i in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colours)):
            colours = new
            break
        colours = new
    cells: dict[int, list[int]] = {}
    for i, c in enumerate(colours):
        cells.setdefault(c, []).append(i)
    ordered = [cells[c] for c in sorted(cells)]
    best = None
    for choice in itertools.product(*(itertools.permutations(cell) for cell in ordered)):
        perm = [i for part in choice for i in part]
        cand = tuple(tuple(b[p][q] for q in perm) for p in perm)
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class FiniteTypeClass:
    verdict: str  # "finite" | "infinite" | "undecided"
    label: str | None = None
    witness: tuple[int, ...] = ()
    representative: ExchangeMatrix | None = None
    explored: int = 0

    @property
    def is_finite(self) -> bool:
        return self.verdict == "finite"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "label": self.label, "witness": list(self.witness)}


def finite_type_classification(B, cap: int = DEFAULT_CAP) -> FiniteTypeClass:
    """Breadth-first search of the mutation class of ``B``.

    Stops at the first bipartite matrix whose Cartan companion is of finite
    type (verdict ``finite``), or at the first matrix with some
    ``|b_ij * b_ji| >= 4`` (verdict ``infinite``).  If the class is exhausted
    without either, every member has ``|b_ij b_ji| <= 3`` yet no finite
    representative was met, which cannot happen; this is reported as
    ``infinite`` only for completeness.  Hitting ``cap`` gives ``undecided``.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    B = _coerce(B)
    n = B.n
    seen = {_canonical_form(B.b)}
    queue = deque([(B, ())])
    explored = 0
    while queue:
        M, word = queue.popleft()
        explored += 1
        b = M.b
        if any(abs(b[i][j] * b[j][i]) >= 4 for i in range(n) for j in range(i + 1, n)):
            return FiniteTypeClass("infinite", None, word, M, explored)
        if bipartite_sign(M) is not None:
            label = classify_cartan(cartan_companion(M))
            if label is not None:
                return FiniteTypeClass("finite", label, word, M, explored)
        for k in range(1, n + 1):
            if word and word[-1] == k:
                continue
            M2 = mutate_matrix(M, k)
            key = _canonical_form(M2.b)
            if key in seen:
                continue
            if len(seen) >= cap:
                return FiniteTypeClass("undecided", None, (), None, explored)
            seen.add(key)
            queue.append((M2, word + (k,)))
    return FiniteTypeClass("infinite", None, (), None, explored)
