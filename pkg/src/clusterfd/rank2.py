"""Rank-2 closed forms: maximal Dyck paths, compatible pairs, greedy
elements with and without principal coefficients, F-polynomial restoration
from f-vectors, Chebyshev formulas for D-matrices and the g-d relation.

Throughout, the initial exchange matrix is ``[[0, b], [-c, 0]]`` with
``b, c >= 0``.  Horizontal edges are ``u_1..u_{a1}`` (left to right) and
vertical edges ``v_1..v_{a2}`` (bottom to top); both are 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .polynomial import LaurentPoly
from .vectors import VectorMatrix

DEFAULT_SIZE_GUARD = 24

Point = tuple[int, int]


class SizeGuardError(ValueError):
    """The Dyck path is too long for brute-force pair enumeration."""


@dataclass(frozen=True)
class MaximalDyckPath:
    a1: int
    a2: int

    def __post_init__(self):
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError("path dimensions must be non-negative")

    @cached_property
    def steps(self) -> tuple[str, ...]:
        """Step sequence, ``"h"`` east or ``"v"`` north.

        At each column ``x`` the path climbs to the highest lattice point
        weakly below the diagonal, ``floor(x * a2 / a1)``.
        """
        a1, a2 = self.a1, self.a2
        if a1 == 0:
            return ("v",) * a2
        out: list[str] = []
        height = 0
        for x in range(1, a1 + 1):
            out.append("h")
            top = x * a2 // a1
            out.extend("v" * (top - height))
            height = top
        return tuple(out)

    @property
    def length(self) -> int:
        return self.a1 + self.a2

    @cached_property
    def points(self) -> tuple[Point, ...]:
        """Lattice points in path order, ``(0,0)`` through ``(a1,a2)``."""
        x = y = 0
        pts = [(0, 0)]
        for s in self.steps:
            if s == "h":
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return tuple(pts)

    @cached_property
    def edge_labels(self) -> tuple[str, ...]:
        """``"u3"``/``"v2"``-style label of each step."""
        labels, hu, hv = [], 0, 0
        for s in self.steps:
            if s == "h":
                hu += 1
                labels.append(f"u{hu}")
            else:
                hv += 1
                labels.append(f"v{hv}")
        return tuple(labels)

    @cached_property
    def h_steps(self) -> tuple[int, ...]:
        """Step index of each horizontal edge ``u_1..u_{a1}``."""
        return tuple(i for i, s in enumerate(self.steps) if s == "h")

    @cached_property
    def v_steps(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.steps) if s == "v")

    def position(self, p: Point) -> int:
        """Index of ``p`` on the cyclic path; ``(a1,a2)`` is identified with ``(0,0)``."""
        p = tuple(p)
        if p == (self.a1, self.a2):
            return 0
        try:
            return self.points.index(p)
        except ValueError:
            raise ValueError(f"{p} is not on the path") from None

    def subpath(self, A: Point, B: Point) -> tuple[list[str], list[str], list[Point]]:
        """Edges of the subpath from ``A`` northeast to ``B``, wrapping through ``(a1,a2)``.

        Returns horizontal labels, vertical labels (both in path order) and
        the interior lattice points.  ``A == B`` gives the full cycle.
        """
        L = self.length
        if L == 0:
            return [], [], []
        i, j = self.position(A), self.position(B)
        count = (j - i) % L or L
        h, v, inner = [], [], []
        for m in range(count):
            s = (i + m) % L
            (h if self.steps[s] == "h" else v).append(self.edge_labels[s])
            if m:
                inner.append(self.points[s])
        return h, v, inner

    def __str__(self) -> str:
        return " -> ".join(f"({x},{y})" for x, y in self.points)


def maximal_dyck_path(a1: int, a2: int) -> MaximalDyckPath:
    return MaximalDyckPath(a1, a2)


def subpath_edges(D: MaximalDyckPath, A: Point, B: Point):
    return D.subpath(A, B)


def _as_index_set(S, prefix: str) -> frozenset[int]:
    out = set()
    for e in S:
        if isinstance(e, str):
            if not e.startswith(prefix):
                raise ValueError(f"{e!r} is not a {prefix}-edge")
            e = int(e[1:])
        out.add(int(e))
    return frozenset(out)


class _PairChecker:
    """Compatibility tests on a fixed path.

    Edge sets are bitmasks (bit ``i-1`` for ``u_i`` or ``v_i``).  For each
    ``(u, v)`` and each interior point ``A`` of the subpath ``EF`` we
    precompute ``|(AF)_1|``, the mask of ``(AF)_2``, ``|(EA)_2|`` and the
    mask of ``(EA)_1``, so one test is a handful of popcounts.
    """

    def __init__(self, D: MaximalDyckPath, b: int, c: int):
        self.D, self.b, self.c = D, b, c
        L = D.length
        self.h_pos = D.h_steps
        self.v_pos = D.v_steps
        u_of = {s: i for i, s in enumerate(D.h_steps)}
        v_of = {s: i for i, s in enumerate(D.v_steps)}
        self.table: dict[tuple[int, int], list[tuple[int, int, int, int]]] = {}
        for ui, E in enumerate(D.h_steps):
            for vi, vs in enumerate(D.v_steps):
                F = vs + 1
                count = (F - E) % L or L
                seq = [(E + m) % L for m in range(count)]
                rows = []
                for m in range(1, count):
                    ea, af = seq[:m], seq[m:]
                    af_h = sum(1 for s in af if s in u_of)
                    af_vmask = sum(1 << v_of[s] for s in af if s in v_of)
                    ea_v = sum(1 for s in ea if s in v_of)
                    ea_hmask = sum(1 << u_of[s] for s in ea if s in u_of)
                    rows.append((af_h, af_vmask, ea_v, ea_hmask))
                self.table[(ui + 1, vi + 1)] = rows

    def pair_ok_mask(self, u: int, v: int, m1: int, m2: int) -> bool:
        b, c = self.b, self.c
        for af_h, af_vmask, ea_v, ea_hmask in self.table[(u, v)]:
            if af_h == b * (m2 & af_vmask).bit_count() or ea_v == c * (m1 & ea_hmask).bit_count():
                return True
        return False

    def pair_ok(self, u: int, v: int, S1, S2) -> bool:
        """Condition for one ``(u, v)``: E left end of ``u``, F top end of ``v``."""
        return self.pair_ok_mask(u, v, _mask(S1), _mask(S2))

    def wraps(self, u: int, v: int) -> bool:
        return self.h_pos[u - 1] >= self.v_pos[v - 1] + 1


def _mask(S) -> int:
    return sum(1 << (i - 1) for i in S)


def _unmask(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def is_compatible(D: MaximalDyckPath, S1, S2, b: int, c: int) -> bool:
    """Literal check of the compatibility condition for every ``(u, v)`` in ``S1 x S2``.

    Edges may be given as 1-based indices or labels like ``"u2"``.
    """
    S1 = _as_index_set(S1, "u")
    S2 = _as_index_set(S2, "v")
    if any(not 1 <= u <= D.a1 for u in S1) or any(not 1 <= v <= D.a2 for v in S2):
        raise ValueError("edge index out of range")
    if not S1 or not S2:
        return True
    chk = _PairChecker(D, b, c)
    m1, m2 = _mask(S1), _mask(S2)
    return all(chk.pair_ok_mask(u, v, m1, m2) for u in S1 for v in S2)


def _guard(a1: int, a2: int, size_guard: int | None) -> None:
    if size_guard is not None and a1 + a2 > size_guard:
        raise SizeGuardError(f"path {a1}x{a2} has {a1 + a2} edges, above the guard of {size_guard}")


def _iter_pair_masks(a1: int, a2: int, b: int, c: int, size_guard: int | None) -> Iterator[tuple[int, int]]:
    # Edges are decided in descending path order.  When u is decided, every
    # step after its left endpoint is fixed, which covers the subpath of each
    # non-wrapping (u, v); wrapping pairs wait until both sets are complete.
    _guard(a1, a2, size_guard)
    D = MaximalDyckPath(a1, a2)
    chk = _PairChecker(D, b, c)
    steps = D.steps
    order = list(range(D.length - 1, -1, -1))
    u_of = {s: i + 1 for i, s in enumerate(D.h_steps)}
    v_of = {s: i + 1 for i, s in enumerate(D.v_steps)}
    early = {u: [v for v in range(1, a2 + 1) if not chk.wraps(u, v)] for u in range(1, a1 + 1)}
    late = [(u, v) for u in range(1, a1 + 1) for v in range(1, a2 + 1) if chk.wraps(u, v)]
    ok = chk.pair_ok_mask

    def grow(pos: int, m1: int, m2: int) -> Iterator[tuple[int, int]]:
        if pos == len(order):
            if all(ok(u, v, m1, m2) for u, v in late if m1 >> (u - 1) & 1 and m2 >> (v - 1) & 1):
                yield m1, m2
            return
        s = order[pos]
        yield from grow(pos + 1, m1, m2)
        if steps[s] == "h":
            u = u_of[s]
            t1 = m1 | 1 << (u - 1)
            if all(ok(u, v, t1, m2) for v in early[u] if m2 >> (v - 1) & 1):
                yield from grow(pos + 1, t1, m2)
        else:
            yield from grow(pos + 1, m1, m2 | 1 << (v_of[s] - 1))

    yield from grow(0, 0, 0)


def iter_compatible_pairs(a1: int, a2: int, b: int, c: int,
                          size_guard: int | None = DEFAULT_SIZE_GUARD) -> Iterator[tuple[frozenset, frozenset]]:
    """Yield every compatible pair ``(S1, S2)`` as sets of 1-based edge indices.

    Backtracking over edge subsets with early rejection of failing
    ``(u, v)`` pairs; raises :class:`SizeGuardError` above ``size_guard`` edges.
    """
    for m1, m2 in _iter_pair_masks(a1, a2, b, c, size_guard):
        yield _unmask(m1), _unmask(m2)


def enumerate_compatible_pairs(a1: int, a2: int, b: int, c: int,
                               size_guard: int | None = DEFAULT_SIZE_GUARD) -> list[tuple[frozenset, frozenset]]:
    """All compatible pairs, ordered by ``(|S1|+|S2|, sorted S1, sorted S2)``."""
    pairs = list(iter_compatible_pairs(a1, a2, b, c, size_guard))
    pairs.sort(key=lambda p: (len(p[0]) + len(p[1]), sorted(p[0]), sorted(p[1])))
    return pairs


def pair_size_counts(a1: int, a2: int, b: int, c: int,
                     size_guard: int | None = DEFAULT_SIZE_GUARD) -> Counter:
    """Number of compatible pairs for each ``(|S1|, |S2|)``."""
    return Counter((m1.bit_count(), m2.bit_count()) for m1, m2 in _iter_pair_masks(a1, a2, b, c, size_guard))


def _pos(a: int) -> int:
    return a if a > 0 else 0


X_VARS = ("x1", "x2")
PRINCIPAL_VARS = ("x1", "x2", "y1", "y2")
Y_VARS = ("y1", "y2")


def greedy_element(d: Sequence[int], b: int, c: int,
                   size_guard: int | None = DEFAULT_SIZE_GUARD) -> LaurentPoly:
    """``x1^-d1 x2^-d2 * sum x1^(b|S2|) x2^(c|S1|)`` over compatible pairs of ``D^{[d1]+ x [d2]+}``."""
    d1, d2 = d
    terms: dict = {}
    for (s1, s2), n in pair_size_counts(_pos(d1), _pos(d2), b, c, size_guard).items():
        e = (b * s2 - d1, c * s1 - d2)
        terms[e] = terms.get(e, 0) + n
    return LaurentPoly(X_VARS, terms)


def greedy_element_principal(d: Sequence[int], b: int, c: int,
                             size_guard: int | None = DEFAULT_SIZE_GUARD) -> LaurentPoly:
    """Principal-coefficient version: each pair also carries ``y1^([d1]+ - |S1|) y2^|S2|``."""
    d1, d2 = d
    a1, a2 = _pos(d1), _pos(d2)
    terms: dict = {}
    for (s1, s2), n in pair_size_counts(a1, a2, b, c, size_guard).items():
        e = (b * s2 - d1, c * s1 - d2, a1 - s1, s2)
        terms[e] = terms.get(e, 0) + n
    return LaurentPoly(PRINCIPAL_VARS, terms)


def restore_F(f: Sequence[int], b: int, c: int,
              size_guard: int | None = DEFAULT_SIZE_GUARD) -> LaurentPoly:
    """F-polynomial with maximal degree vector ``f``: ``sum y1^(f1-|S1|) y2^|S2|``."""
    f1, f2 = f
    if f1 < 0 or f2 < 0:
        raise ValueError("f-vectors are non-negative")
    terms: dict = {}
    for (s1, s2), n in pair_size_counts(f1, f2, b, c, size_guard).items():
        e = (f1 - s1, s2)
        terms[e] = terms.get(e, 0) + n
    return LaurentPoly(Y_VARS, terms)


def chebyshev_S(p: int, u: int) -> int:
    """Normalised Chebyshev polynomial of the second kind, ``S_p(u)``."""
    if p < -1:
        raise ValueError("S_p is defined for p >= -1")
    prev, cur = 0, 1
    if p == -1:
        return 0
    for _ in range(p):
        prev, cur = cur, u * cur - prev
    return cur


def rank2_D_closed_form(n: int, b: int, c: int) -> VectorMatrix:
    """D-matrix at ``t_n`` on the rank-2 strip from Chebyshev polynomials, ``u = bc - 2``.

    For ``n < 0`` the matrix is read off ``D_{-n}`` for ``(b, c)`` swapped,
    reflected in the anti-diagonal.  The odd-``n`` diagonal uses
    ``S_{(n-1)/2} + S_{(n-3)/2}`` on top and ``S_{(n-3)/2} + S_{(n-5)/2}``
    below.
    """
    if n < 0:
        m = rank2_D_closed_form(-n, c, b).entries
        return VectorMatrix("D", ((m[1][1], m[1][0]), (m[0][1], m[0][0])))
    if n == 0:
        return VectorMatrix("D", ((-1, 0), (0, -1)))
    if n == 1:
        return VectorMatrix("D", ((1, 0), (0, -1)))
    u = b * c - 2

    def S(p: int) -> int:
        return 0 if p < -1 else chebyshev_S(p, u)

    if n % 2 == 0:
        p, q = (n - 2) // 2, (n - 4) // 2
        diag = S(p) + S(q)
        return VectorMatrix("D", ((diag, b * S(p)), (c * S(q), diag)))
    p, q, r = (n - 1) // 2, (n - 3) // 2, (n - 5) // 2
    return VectorMatrix("D", ((S(p) + S(q), b * S(q)), (c * S(q), S(q) + S(r))))


def g_from_d_rank2(d: Sequence[int], b: int, c: int) -> tuple[int, int]:
    """g-vector of the non-initial cluster variable with d-vector ``d``."""
    d1, d2 = d
    return (-d1, c * d1 - d2)
