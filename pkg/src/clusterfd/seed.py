"""Labeled seeds with principal coefficients and their mutations.

Cluster variables are stored fully expanded as Laurent polynomials in the
initial variables ``x1..xn`` with coefficients in ``Z[y1..yn]``; each
mutation divides exactly, so a division failure would expose a violation
of the Laurent phenomenon.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .exchange import ExchangeMatrix, _coerce, mutate_matrix
from .polynomial import LaurentPoly, TropicalMonomial, principal_variables


class EnumerationCapExceeded(RuntimeError):
    """Seed enumeration stopped at its cap; ``partial`` holds what was found."""

    def __init__(self, cap: int, partial: list):
        super().__init__(f"more than {cap} non-labeled seeds; enumeration undecided")
        self.cap = cap
        self.partial = partial


@dataclass(frozen=True)
class Seed:
    B: ExchangeMatrix
    x: tuple[LaurentPoly, ...]
    y: tuple[TropicalMonomial, ...]

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def variables(self) -> tuple[str, ...]:
        return self.x[0].variables

    def mutate(self, k: int) -> Seed:
        return mutate_seed(self, k)

    def apply(self, word: Sequence[int]) -> Seed:
        return apply_word(self, word)

    def F_polynomials(self) -> tuple[LaurentPoly, ...]:
        xs = self.variables[: self.n]
        return tuple(p.specialize(xs) for p in self.x)

    def permute(self, perm: Sequence[int]) -> Seed:
        """Seed with ``x_i, y_i, b_ij`` taken from positions ``perm[i], perm[j]``."""
        return Seed(self.B.permute(perm), tuple(self.x[p] for p in perm), tuple(self.y[p] for p in perm))

    def canonical_key(self) -> tuple:
        """Key shared exactly by permutation-equivalent seeds.

        Cluster variables in a seed are distinct, so sorting them fixes the
        permutation.
        """
        order = sorted(range(self.n), key=lambda i: self.x[i].sort_key())
        s = self.permute(order)
        return (tuple(p.sort_key() for p in s.x), tuple(t.exps for t in s.y), s.B.b)

    def to_json(self) -> dict:
        return {
            "B": self.B.to_json(),
            "x": [p.to_json() for p in self.x],
            "y": [t.to_json() for t in self.y],
        }

    @classmethod
    def from_json(cls, data) -> Seed:
        return cls(
            ExchangeMatrix.from_json(data["B"]),
            tuple(LaurentPoly.from_json(p) for p in data["x"]),
            tuple(TropicalMonomial.from_json(t) for t in data["y"]),
        )


def initial_seed(B) -> Seed:
    """Seed at the initial vertex with principal coefficients."""
    B = _coerce(B)
    n = B.n
    names = principal_variables(n)
    x = tuple(LaurentPoly.var(names, f"x{i}") for i in range(1, n + 1))
    y = tuple(TropicalMonomial.generator(n, j) for j in range(1, n + 1))
    return Seed(B, x, y)


def mutate_seed(s: Seed, k: int) -> Seed:
    """Seed mutation in direction ``k`` (1-based)."""
    n = s.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    kk = k - 1
    b = s.B.b
    yk = s.y[kk]
    one = TropicalMonomial.one(n)
    ysum = yk + one

    new_y = []
    for j in range(n):
        if j == kk:
            new_y.append(yk.inverse())
        else:
            bkj = b[kk][j]
            new_y.append(s.y[j] * yk ** max(bkj, 0) * ysum ** (-bkj))

    names = s.variables
    plus = yk.to_poly(names, offset=n)
    minus = LaurentPoly.one(names)
    for i in range(n):
        bik = b[i][kk]
        if bik > 0:
            plus = plus * s.x[i] ** bik
        elif bik < 0:
            minus = minus * s.x[i] ** (-bik)
    denominator = ysum.to_poly(names, offset=n) * s.x[kk]
    xk = (plus + minus).exact_div(denominator)
    new_x = s.x[:kk] + (xk,) + s.x[kk + 1:]
    return Seed(mutate_matrix(s.B, k), new_x, tuple(new_y))


def apply_word(s: Seed, word: Sequence[int]) -> Seed:
    for k in word:
        s = mutate_seed(s, k)
    return s


def seeds_along(B, word: Sequence[int]) -> list[Seed]:
    """Seeds at every vertex of the walk, starting with the initial seed."""
    s = initial_seed(B) if not isinstance(B, Seed) else B
    out = [s]
    for k in word:
        s = mutate_seed(s, k)
        out.append(s)
    return out


def non_labeled_equal(s1: Seed, s2: Seed) -> bool:
    """True iff some permutation aligns x, y and B of the two seeds simultaneously."""
    if s1.n != s2.n:
        return False
    n = s1.n
    # candidate images for each position of s1, matched on cluster variables first
    cands = [[j for j in range(n) if s2.x[j] == s1.x[i] and s2.y[j] == s1.y[i]] for i in range(n)]
    if any(not c for c in cands):
        return False
    for perm in itertools.product(*cands):
        if len(set(perm)) != n:
            continue
        if all(s1.B.b[i][j] == s2.B.b[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


@dataclass(frozen=True)
class SeedClass:
    """A non-labeled seed together with a labeled representative and its word."""

    seed: Seed
    word: tuple[int, ...]


def enumerate_seeds(B, cap: int = 10_000) -> list[SeedClass]:
    """All non-labeled seeds reachable from the initial one, in BFS order.

    Raises :class:`EnumerationCapExceeded` once more than ``cap`` classes
    have been found.
    """
    s0 = initial_seed(B)
    found = [SeedClass(s0, ())]
    seen = {s0.canonical_key()}
    queue = deque(found)
    while queue:
        cur = queue.popleft()
        for k in range(1, s0.n + 1):
            if cur.word and cur.word[-1] == k:
                continue
            nxt = mutate_seed(cur.seed, k)
            key = nxt.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            item = SeedClass(nxt, cur.word + (k,))
            found.append(item)
            if len(found) > cap:
                raise EnumerationCapExceeded(cap, found)
            queue.append(item)
    return found


def cluster_variables(classes: Sequence[SeedClass]) -> set[LaurentPoly]:
    return {p for c in classes for p in c.seed.x}


def has_positive_coefficients(p: LaurentPoly) -> bool:
    return all(c > 0 for c in p.coefficients())
