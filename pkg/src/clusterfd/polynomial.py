"""Sparse Laurent polynomials with integer coefficients, and tropical monomials.

A :class:`LaurentPoly` lives in a fixed ring context given by a tuple of
variable names.  Terms are stored as a mapping from integer exponent
vectors (negative entries allowed) to nonzero Python ints, so coefficients
never overflow.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


class NonExactDivisionError(ArithmeticError):
    """Raised when a Laurent division leaves a remainder.

    Inside the seed engine this means the Laurent phenomenon was violated,
    which can only happen through an implementation bug.
    """


def principal_variables(n: int) -> tuple[str, ...]:
    """Variable names ``x1..xn, y1..yn`` used for principal coefficients."""
    return tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))


class LaurentPoly:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, int] | None = None):
        self.variables = tuple(variables)
        m = len(self.variables)
        clean: dict[Exponents, int] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != m:
                    raise ValueError(f"exponent vector {e} has length {len(e)}, expected {m}")
                if c:
                    clean[e] = clean.get(e, 0) + int(c)
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> LaurentPoly:
        return cls(variables)

    @classmethod
    def one(cls, variables: Sequence[str]) -> LaurentPoly:
        return cls.monomial(variables, (0,) * len(variables))

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> LaurentPoly:
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls.monomial(variables, e)

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponents, int]) -> LaurentPoly:
        # terms must already be canonical (no zero coefficients)
        p = object.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    # -- basic protocol -----------------------------------------------
    @property
    def terms(self) -> dict[Exponents, int]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def items(self) -> list[tuple[Exponents, int]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self._terms.items(), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.one(self.variables) * other if other else not self._terms
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """Total order key, used to canonicalise clusters."""
        return tuple(self.items())

    def _check(self, other: LaurentPoly) -> None:
        if self.variables != other.variables:
            raise ValueError(f"ring mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.monomial(self.variables, (0,) * self.nvars, other)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient has no integral inverse")
            return LaurentPoly.monomial(self.variables, [a * k for a in e], c ** (-k))
        result = LaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        """Return ``q`` with ``q * divisor == self``.

        Leading-term reduction in lex order.  In each variable the extreme
        degrees of a product are sums of the factors' extreme degrees, so
        every quotient term must lie in a known box; leaving it means the
        division is not exact.
        """
        self._check(divisor)
        if not divisor._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return LaurentPoly._raw(self.variables, {})
        if len(divisor._terms) == 1:
            (de, dc), = divisor._terms.items()
            out = {}
            for e, c in self._terms.items():
                q, r = divmod(c, dc)
                if r:
                    raise NonExactDivisionError(f"coefficient {c} not divisible by {dc}")
                out[tuple(a - b for a, b in zip(e, de))] = q
            return LaurentPoly._raw(self.variables, out)

        m = self.nvars
        lo = [min(e[i] for e in self._terms) - min(e[i] for e in divisor._terms) for i in range(m)]
        hi = [max(e[i] for e in self._terms) - max(e[i] for e in divisor._terms) for i in range(m)]
        lead_e, lead_c = max(divisor._terms.items())
        dterms = list(divisor._terms.items())
        rem = dict(self._terms)
        quot: dict[Exponents, int] = {}
        # max-heap of remainder exponents, with stale entries skipped lazily
        heap = [tuple(-a for a in e) for e in rem]
        heapq.heapify(heap)
        while rem:
            e = tuple(-a for a in heapq.heappop(heap))
            c = rem.get(e)
            if c is None:
                continue
            q, r = divmod(c, lead_c)
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if r or any(qe[i] < lo[i] or qe[i] > hi[i] for i in range(m)):
                raise NonExactDivisionError(f"{self} is not divisible by {divisor}")
            quot[qe] = q
            for de, dc in dterms:
                te = tuple(a + b for a, b in zip(qe, de))
                old = rem.get(te)
                v = (old or 0) - q * dc
                if v:
                    if old is None:
                        heapq.heappush(heap, tuple(-a for a in te))
                    rem[te] = v
                elif old is not None:
                    del rem[te]
        return LaurentPoly._raw(self.variables, quot)

    # -- inspection -----------------------------------------------------
    def _index(self, var: str | int) -> int:
        return var if isinstance(var, int) else self.variables.index(var)

    def max_degree(self, var: str | int) -> int:
        if not self._terms:
            raise ValueError("max_degree of the zero polynomial")
        i = self._index(var)
        return max(e[i] for e in self._terms)

    def min_degree(self, var: str | int) -> int:
        if not self._terms:
            raise ValueError("min_degree of the zero polynomial")
        i = self._index(var)
        return min(e[i] for e in self._terms)

    def specialize(self, names: Iterable[str]) -> LaurentPoly:
        """Set the given variables to 1; the result lives in the remaining variables."""
        drop = {self._index(v) for v in names}
        keep = [i for i in range(self.nvars) if i not in drop]
        out: dict[Exponents, int] = {}
        for e, c in self._terms.items():
            k = tuple(e[i] for i in keep)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(tuple(self.variables[i] for i in keep), out)

    def evaluate(self, values: Mapping[str, int]) -> Fraction:
        """Exact value at nonzero rational points."""
        total = Fraction(0)
        for e, c in self._terms.items():
            t = Fraction(c)
            for name, k in zip(self.variables, e):
                if k:
                    t *= Fraction(values[name]) ** k
            total += t
        return total

    def degree_vectors(self, grading: Mapping[str, Sequence[int]]) -> set[tuple[int, ...]]:
        """Set of degrees of all terms under a Z^r grading of the variables."""
        degs = [tuple(grading[v]) for v in self.variables]
        r = len(degs[0]) if degs else 0
        out = set()
        for e in self._terms:
            out.add(tuple(sum(k * d[j] for k, d in zip(e, degs)) for j in range(r)))
        return out

    def coefficients(self) -> list[int]:
        return [c for _, c in self.items()]

    def common_denominator(self) -> Exponents:
        """Exponents of the largest monomial dividing every term (componentwise min)."""
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    # -- presentation ---------------------------------------------------
    def _monomial_str(self, e: Exponents) -> str:
        parts = []
        for name, k in zip(self.variables, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = self._monomial_str(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_fraction_str(self, denominator_vars: Iterable[str] | None = None) -> str:
        """Render as ``numerator / monomial`` with nonnegative exponents upstairs.

        Only the variables in ``denominator_vars`` (default: all) are moved
        to the denominator; factoring is done at presentation time only.
        """
        names = set(self.variables if denominator_vars is None else denominator_vars)
        low = self.common_denominator()
        shift = tuple(-min(low[i], 0) if self.variables[i] in names else 0 for i in range(self.nvars))
        if not any(shift):
            return str(self)
        num = self * LaurentPoly.monomial(self.variables, shift)
        den = LaurentPoly.monomial(self.variables, shift)
        return f"({num})/({den})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LaurentPoly:
        variables = tuple(data["vars"])
        terms: dict[Exponents, int] = {}
        for t in data["terms"]:
            e = tuple(int(v) for v in t["e"])
            terms[e] = terms.get(e, 0) + int(t["c"])
        return cls(variables, terms)


@dataclass(frozen=True)
class TropicalMonomial:
    """Element ``prod y_j^{exps[j]}`` of the tropical semifield Trop(y1..yn).

    ``*`` and ``/`` add and subtract exponents; ``+`` is the tropical sum,
    which takes componentwise minima.
    """

    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(v) for v in self.exps))

    @classmethod
    def one(cls, n: int) -> TropicalMonomial:
        return cls((0,) * n)

    @classmethod
    def generator(cls, n: int, j: int) -> TropicalMonomial:
        """The generator y_j, with j 1-based."""
        e = [0] * n
        e[j - 1] = 1
        return cls(tuple(e))

    def _check(self, other: TropicalMonomial) -> None:
        if len(self.exps) != len(other.exps):
            raise ValueError("tropical monomials over different numbers of generators")

    def __add__(self, other: TropicalMonomial) -> TropicalMonomial:
        self._check(other)
        return TropicalMonomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def __mul__(self, other: TropicalMonomial) -> TropicalMonomial:
        self._check(other)
        return TropicalMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other: TropicalMonomial) -> TropicalMonomial:
        self._check(other)
        return TropicalMonomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> TropicalMonomial:
        return TropicalMonomial(tuple(a * k for a in self.exps))

    def inverse(self) -> TropicalMonomial:
        return self ** -1

    def to_poly(self, variables: Sequence[str], offset: int = 0) -> LaurentPoly:
        """Embed as a Laurent monomial; generator j maps to ``variables[offset + j]``."""
        e = [0] * len(variables)
        for j, a in enumerate(self.exps):
            e[offset + j] = a
        return LaurentPoly.monomial(variables, e)

    def __str__(self) -> str:
        parts = []
        for j, a in enumerate(self.exps, 1):
            if a == 1:
                parts.append(f"y{j}")
            elif a:
                parts.append(f"y{j}^{a}")
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {"e": list(self.exps)}

    @classmethod
    def from_json(cls, data: Mapping) -> TropicalMonomial:
        return cls(tuple(data["e"]))


def tropical_add(a: TropicalMonomial, b: TropicalMonomial) -> TropicalMonomial:
    return a + b


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def poly_neg(p: LaurentPoly) -> LaurentPoly:
    return -p


def poly_exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p.exact_div(q)


def specialize(p: LaurentPoly, names: Iterable[str]) -> LaurentPoly:
    return p.specialize(names)


def max_degree(p: LaurentPoly, var: str | int) -> int:
    return p.max_degree(var)


def denominator_vector(p: LaurentPoly, names: Sequence[str]) -> tuple[int, ...]:
    """``d_k = -(minimum exponent of names[k])`` over the terms of ``p``."""
    if p.is_zero():
        raise ValueError("denominator vector of the zero polynomial")
    return tuple(-p.min_degree(v) for v in names)


def parse_poly(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse a small polynomial expression such as ``"x1^2*y1 - 3*x2 + 1"``.

    Supports ``+``, ``-``, ``*``, ``/`` by monomials, ``^`` with integer
    exponents and parentheses; meant for tests and CLI convenience.
    """
    import ast

    variables = tuple(variables)
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node) -> LaurentPoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return LaurentPoly.one(variables) * node.value
        if isinstance(node, ast.Name):
            return LaurentPoly.var(variables, node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = node.right
                sign = 1
                if isinstance(k, ast.UnaryOp) and isinstance(k.op, ast.USub):
                    sign, k = -1, k.operand
                if not (isinstance(k, ast.Constant) and isinstance(k.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** (sign * k.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a.exact_div(b)
        raise ValueError(f"unsupported expression: {ast.dump(node)}")

    return ev(tree)
