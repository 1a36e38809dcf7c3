"""Scalar generators-and-relations presentation of the Bergman algebra B(X, R).

Each generator ``x`` gets a square idempotent matrix ``eps[x]``; a composite
element gets the direct sum of its summands' matrices (declaration order).
Red relations contribute rectangular matrices ``sig`` and ``sigp``.  All
matrix relations are expanded entrywise into noncommutative polynomials
with rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .monoid import Element
from .structures import BergmanPresentation, validate_presentation

Monomial = tuple  # tuple of symbol names; () is the constant 1


def _mono_key(m: Monomial):
    return (len(m), m)


class Poly:
    """A noncommutative polynomial: finite map monomial -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=()):
        acc: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, c in items:
            c = Fraction(c)
            if c:
                mono = tuple(mono)
                acc[mono] = acc.get(mono, Fraction(0)) + c
        self._terms = tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda t: _mono_key(t[0])))
        self._hash = hash(self._terms)

    @classmethod
    def symbol(cls, name: str) -> Poly:
        return cls({(name,): 1})

    @classmethod
    def const(cls, c) -> Poly:
        return cls({(): c})

    def terms(self):
        return self._terms

    def symbols(self) -> set[str]:
        return {s for m, _ in self._terms for s in m}

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __add__(self, other: Poly) -> Poly:
        return Poly(list(self._terms) + list(other._terms))

    def __neg__(self) -> Poly:
        return Poly([(m, -c) for m, c in self._terms])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = m1 + m2
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return Poly(acc)

    def format(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self._terms):
            sign = "-" if c < 0 else "+"
            body = " * ".join([str(abs(c))] + list(m))
            if k == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    __str__ = format

    def __repr__(self):
        return f"Poly({self.format()!r})"


ZERO = Poly()
ONE = Poly.const(1)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix entries do not match its dimensions")

    @classmethod
    def zero(cls, rows, cols) -> Matrix:
        return cls(rows, cols, tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n) -> Matrix:
        return cls(n, n, tuple(tuple(ONE if p == q else ZERO for q in range(n)) for p in range(n)))

    @classmethod
    def symbolic(cls, stem: str, rows: int, cols: int) -> Matrix:
        """Entries ``stem[p,q]`` (1-based)."""
        return cls(rows, cols, tuple(tuple(Poly.symbol(f"{stem}[{p},{q}]") for q in range(1, cols + 1)) for p in range(1, rows + 1)))

    def symbol_names(self) -> list[str]:
        return [next(iter(e.symbols())) for row in self.entries for e in row]

    def _same_shape(self, other, op):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"dimension mismatch in {op}: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other, "addition")
        return Matrix(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other, "subtraction")
        return Matrix(self.rows, self.cols, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch in product: {self.rows}x{self.cols} times {other.rows}x{other.cols}")
        out = []
        for p in range(self.rows):
            row = []
            for q in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a, b = self.entries[p][k], other.entries[k][q]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.rows, other.cols, tuple(out))

    def direct_sum(self, other: Matrix) -> Matrix:
        rows = [r + tuple(ZERO for _ in range(other.cols)) for r in self.entries]
        rows += [tuple(ZERO for _ in range(self.cols)) + r for r in other.entries]
        return Matrix(self.rows + other.rows, self.cols + other.cols, tuple(rows))


def direct_sum(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = out.direct_sum(m)
    return out


@dataclass(frozen=True)
class ScalarEquation:
    lhs: Poly
    rhs: Poly
    source: str = ""

    @property
    def trivial(self) -> bool:
        return self.lhs == self.rhs


def expand_matrix_relation(lhs: Matrix, rhs: Matrix, source: str = "") -> list[ScalarEquation]:
    if (lhs.rows, lhs.cols) != (rhs.rows, rhs.cols):
        raise ValueError(f"dimension mismatch: {lhs.rows}x{lhs.cols} vs {rhs.rows}x{rhs.cols}")
    return [
        ScalarEquation(lhs.entries[p][q], rhs.entries[p][q], source)
        for p in range(lhs.rows)
        for q in range(lhs.cols)
    ]


@dataclass
class Epsilons:
    """Matrices attached to generators, split into levels."""

    presentation: BergmanPresentation
    ordering: tuple[str, ...]
    matrices: dict[str, Matrix]
    # level k -> (defining element a, generators in order, symbolic ones)
    levels: list[tuple[Element | None, list[str]]] = field(default_factory=list)

    def of(self, c: Element) -> Matrix:
        if not c:
            raise ValueError("zero element has no matrix")
        order = self.presentation.generators
        pos = {x: i for i, x in enumerate(order)}
        mats = []
        for x, m in sorted(c.items(), key=lambda t: pos[t[0]]):
            mats += [self.matrices[x]] * m
        return direct_sum(mats)

    def dim(self, c: Element) -> int:
        return sum(self.matrices[x].rows * m for x, m in c.items())


def build_epsilons(p: BergmanPresentation, ordering: Sequence[str] | None = None) -> Epsilons:
    rep = validate_presentation(p)
    if not rep.ok:
        raise ValueError(f"not a valid Bergman presentation:\n{rep}")
    ordering = tuple(rep.ordering if ordering is None else ordering)
    from .structures import is_admissible

    if not is_admissible(p, ordering):
        raise ValueError(f"ordering {ordering} is not admissible")
    eps = Epsilons(p, ordering, {})
    base = p.base_generators()
    if base:
        acc = ZERO
        for x in base[:-1]:
            e = Matrix.symbolic(f"eps[{x}]", 1, 1)
            eps.matrices[x] = e
            acc = acc + e.entries[0][0]
        eps.matrices[base[-1]] = Matrix(1, 1, ((ONE - acc,),))
    eps.levels.append((None, list(base)))
    for label in ordering:
        r = p.relation(label)
        gens = [x for x in p.generators if x in r.rhs.support()]
        za = eps.of(r.lhs)
        n = za.rows
        rest = za
        for x in gens[:-1]:
            e = Matrix.symbolic(f"eps[{x}]", n, n)
            eps.matrices[x] = e
            rest = rest - e
        eps.matrices[gens[-1]] = rest
        eps.levels.append((r.lhs, gens))
    return eps


@dataclass
class AlgebraPresentation:
    generators: list[str]
    relations: list[ScalarEquation]

    def __post_init__(self):
        declared = set(self.generators)
        for eq in self.relations:
            extra = (eq.lhs.symbols() | eq.rhs.symbols()) - declared
            if extra:
                raise ValueError(f"undeclared symbol(s) {sorted(extra)}")

    @property
    def trivial_count(self) -> int:
        return sum(eq.trivial for eq in self.relations)

    def format(self) -> str:
        lines = [f"gen {g}" for g in self.generators]
        for eq in self.relations:
            tail = "  # trivial" if eq.trivial else ""
            lines.append(f"rel: {eq.lhs} = {eq.rhs}{tail}")
        return "\n".join(lines) + "\n"


def build_algebra_presentation(p: BergmanPresentation, ordering: Sequence[str] | None = None) -> AlgebraPresentation:
    eps = build_epsilons(p, ordering)
    gens: list[str] = []
    rels: list[ScalarEquation] = []
    for k, (a, level_gens) in enumerate(eps.levels):
        symbolic = level_gens[:-1]
        for x in symbolic:
            gens += eps.matrices[x].symbol_names()
        if a is not None:
            za = eps.of(a)
            for x in symbolic:
                e = eps.matrices[x]
                rels += expand_matrix_relation(za @ e @ za, e, f"conj {x}")
        for x in symbolic:
            for y in symbolic:
                ex, ey = eps.matrices[x], eps.matrices[y]
                rhs = ex if x == y else Matrix.zero(ex.rows, ex.cols)
                rels += expand_matrix_relation(ex @ ey, rhs, f"idem {x} {y}")
    for r in p.red:
        za, zb = eps.of(r.lhs), eps.of(r.rhs)
        sig = Matrix.symbolic(f"sig[{r.label}]", za.rows, zb.rows)
        sigp = Matrix.symbolic(f"sigp[{r.label}]", zb.rows, za.rows)
        gens += sig.symbol_names() + sigp.symbol_names()
        rels += expand_matrix_relation(za @ sig @ zb, sig, f"{r.label} sig")
        rels += expand_matrix_relation(zb @ sigp @ za, sigp, f"{r.label} sigp")
        rels += expand_matrix_relation(sig @ sigp, za, f"{r.label} sig*sigp")
        rels += expand_matrix_relation(sigp @ sig, zb, f"{r.label} sigp*sig")
    return AlgebraPresentation(gens, rels)


def dump_alg(a: AlgebraPresentation) -> str:
    return a.format()
