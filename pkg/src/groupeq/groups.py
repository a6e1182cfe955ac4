"""Concrete group carriers.

Finite groups are multiplication tables (numpy integer arrays) so that
equality is decidable and every search is exhaustive.  Presentations and
free-product specifications are light containers used by the rest of the
package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .words import Alphabet, GenSym, Word

# Full n^3 associativity check up to this order, generator-based above it.
ASSOC_FULL_BOUND = 64
# Default cap on the size of a permutation closure.
CLOSURE_CAP = 10_000


class GroupAxiomError(ValueError):
    """A table violates a group axiom.

    ``axiom`` is one of ``"shape"``, ``"closure"``, ``"identity"``,
    ``"inverse"``, ``"associativity"``, ``"subgroup"``, ``"normality"``;
    ``witness`` holds the offending indices.
    """

    def __init__(self, axiom: str, message: str, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class FiniteGroup:
    """A finite group given by its multiplication table.

    Use :func:`validate_table` or :func:`from_permutations` to build one;
    the constructor does not check the axioms.
    """

    def __init__(self, table, identity: int, inverses, labels: Sequence[str] | None = None,
                 perms: Sequence[tuple[int, ...]] | None = None, name: str | None = None):
        self.table = np.asarray(table)
        self.table.setflags(write=False)
        self.order = int(self.table.shape[0])
        self.identity = int(identity)
        self.inverses = np.asarray(inverses)
        self.inverses.setflags(write=False)
        self.labels = tuple(labels) if labels is not None else None
        self.perms = tuple(perms) if perms is not None else None
        self.name = name
        self._index = {lab: i for i, lab in enumerate(self.labels)} if self.labels else {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def __eq__(self, other: object) -> bool:
        """Same table, identity and labels; names and permutations are ignored."""
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.order == other.order and self.identity == other.identity
                and self.labels == other.labels and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.order, self.identity))

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def product(self, elements: Iterable[int]) -> int:
        r = self.identity
        for e in elements:
            r = int(self.table[r, e])
        return r

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        k %= self.element_order(a)
        r, base = self.identity, a
        while k:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return r

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def conj(self, a: int, g: int) -> int:
        """``g a g⁻¹``."""
        return self.mul(self.mul(g, a), self.inv(g))

    def label(self, i: int) -> str:
        if self.labels and self.labels[i]:
            return self.labels[i]
        return str(i)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{self!r} has no element labelled {label!r}") from None

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        """The subgroup generated by ``gens``, as an index set."""
        gens = [int(g) for g in gens]
        seen = {self.identity}
        frontier = [self.identity]
        rows = self.table
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(rows[x, g])
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return frozenset(seen)

    def generating_set(self) -> list[int]:
        """A small generating set, chosen greedily by index."""
        gens: list[int] = []
        span = frozenset({self.identity})
        for x in range(self.order):
            if x not in span:
                gens.append(x)
                span = self.subgroup(gens)
                if len(span) == self.order:
                    break
        return gens

    def restrict(self, elements: Iterable[int], name: str | None = None) -> tuple["FiniteGroup", list[int]]:
        """Subgroup on ``elements`` as its own table, plus the inclusion map."""
        elems = sorted(int(e) for e in elements)
        pos = {e: i for i, e in enumerate(elems)}
        tab = np.array([[pos[int(self.table[a, b])] for b in elems] for a in elems], dtype=np.int64)
        inv = [pos[self.inv(a)] for a in elems]
        labels = [self.label(e) for e in elems] if self.labels else None
        return FiniteGroup(tab, pos[self.identity], inv, labels, name=name), elems


def _table_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def validate_table(raw, labels: Sequence[str] | None = None, name: str | None = None,
                   assoc_bound: int = ASSOC_FULL_BOUND) -> FiniteGroup:
    """Check the group axioms on a raw multiplication table.

    Raises :class:`GroupAxiomError` naming the violated axiom.  Associativity
    is checked on all triples for ``n <= assoc_bound`` and by Light's test
    over a generating set above that.
    """
    try:
        t = np.array(raw, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise GroupAxiomError("shape", f"table is not a rectangular integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupAxiomError("shape", f"table must be a nonempty square, got shape {t.shape}")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        i, j = map(int, bad[0])
        raise GroupAxiomError("closure", f"entry ({i},{j}) = {int(t[i, j])} is not an element index",
                              (i, j))
    ar = np.arange(n)
    ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not ids:
        raise GroupAxiomError("identity", "no element acts as a two-sided identity")
    e = ids[0]
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        cand = np.nonzero((t[a] == e) & (t[:, a] == e))[0]
        if not len(cand):
            raise GroupAxiomError("inverse", f"element {a} has no two-sided inverse", (a,))
        inv[a] = cand[0]
    t = t.astype(_table_dtype(n))
    group = FiniteGroup(t, e, inv.astype(t.dtype), labels, name=name)
    if labels is not None and len(labels) != n:
        raise GroupAxiomError("shape", f"{len(labels)} labels for {n} elements")
    _check_associative(group, assoc_bound)
    return group


def _check_associative(g: FiniteGroup, bound: int) -> None:
    t = g.table.astype(np.int64)
    n = g.order
    if n <= bound:
        middles = range(n)
    else:
        middles = g.generating_set()
    for b in middles:
        # (x b) y  versus  x (b y) for all x, y
        left = t[t[:, b]]          # row x*b
        right = t[:, t[b]]         # column b*y
        diff = np.argwhere(left != right)
        if len(diff):
            x, y = map(int, diff[0])
            raise GroupAxiomError("associativity", f"({x}*{b})*{y} != {x}*({b}*{y})", (x, b, y))


def _compose_codes(perms: np.ndarray, m: int) -> np.ndarray:
    return perms.astype(np.int64) @ (m ** np.arange(m, dtype=np.int64))


def from_permutations(gens: Sequence[Sequence[int]], degree: int | None = None,
                      cap: int = CLOSURE_CAP, labels: dict[int, str] | None = None,
                      name: str | None = None) -> FiniteGroup:
    """Close a set of permutations (image lists on ``0..m-1``) under composition.

    Products act on the right: ``(p*q)(i) = q(p(i))``.  Element 0 is the
    identity and the others appear in breadth-first discovery order over the
    generators.  ``labels`` optionally names generator positions.
    """
    gens = [tuple(int(x) for x in p) for p in gens]
    m = degree if degree is not None else max((len(p) for p in gens), default=0)
    gens = [p + tuple(range(len(p), m)) for p in gens]
    for p in gens:
        if sorted(p) != list(range(m)):
            raise ValueError(f"{p} is not a permutation of 0..{m - 1}")
    ident = tuple(range(m))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        p = elems[i]
        for g in gens:
            q = tuple(g[x] for x in p)
            if q not in index:
                if len(elems) >= cap:
                    raise ValueError(f"permutation closure exceeds cap {cap}")
                index[q] = len(elems)
                elems.append(q)
        i += 1
    n = len(elems)
    arr = np.array(elems, dtype=np.int64).reshape(n, m)
    if m:
        codes = _compose_codes(arr, m)
        order = np.argsort(codes)
        sorted_codes = codes[order]
        table = np.empty((n, n), dtype=_table_dtype(n))
        for a in range(n):
            # row a: p_a * p_b, i.e. i -> p_b(p_a(i))
            prod = arr[:, arr[a]]
            table[a] = order[np.searchsorted(sorted_codes, _compose_codes(prod, m))]
    else:
        table = np.zeros((1, 1), dtype=np.int16)
    inv = np.argmax(table == 0, axis=1)
    lab = None
    if labels:
        lab = [""] * n
        for k, s in labels.items():
            lab[index[gens[k]]] = s
        lab[0] = lab[0] or "1"
    return FiniteGroup(table, 0, inv, lab, perms=elems, name=name)


def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    shift = tuple((i + 1) % n for i in range(n)) if n > 1 else ()
    return from_permutations([shift] if n > 1 else [], degree=n if n > 1 else 0,
                             name=name or f"C{n}")


def symmetric_group(m: int, cap: int = CLOSURE_CAP) -> FiniteGroup:
    if m < 2:
        return from_permutations([], degree=m, name=f"S{m}")
    gens = [tuple([1, 0] + list(range(2, m))), tuple(list(range(1, m)) + [0])]
    return from_permutations(gens, cap=cap, name=f"S{m}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """``G × H`` with element ``(a, b)`` at index ``a * |H| + b``."""
    ng, nh = g.order, h.order
    tg = g.table.astype(np.int64)
    th = h.table.astype(np.int64)
    table = (tg[:, None, :, None] * nh + th[None, :, None, :]).reshape(ng * nh, ng * nh)
    inv = (g.inverses.astype(np.int64)[:, None] * nh + h.inverses.astype(np.int64)[None, :]).ravel()
    labels = None
    if g.labels or h.labels:
        labels = [f"({g.label(a)},{h.label(b)})" for a in range(ng) for b in range(nh)]
    return FiniteGroup(table.astype(_table_dtype(ng * nh)), g.identity * nh + h.identity, inv,
                       labels, name=name)


def is_subgroup(g: FiniteGroup, s: Iterable[int]) -> bool:
    s = set(int(x) for x in s)
    if g.identity not in s:
        return False
    return all(g.mul(a, g.inv(b)) in s for a in s for b in s)


def normal_closure(g: FiniteGroup, s: Iterable[int]) -> frozenset[int]:
    """Least normal subgroup of ``g`` containing ``s``."""
    conjugates = {g.conj(int(a), x) for a in s for x in range(g.order)}
    return g.subgroup(sorted(conjugates))


def check_normal_subgroup(g: FiniteGroup, a: Iterable[int]) -> frozenset[int]:
    """Return ``a`` as a frozenset, or raise :class:`GroupAxiomError`."""
    a = frozenset(int(x) for x in a)
    if not a <= set(range(g.order)):
        raise GroupAxiomError("subgroup", "subset contains non-elements")
    if g.identity not in a:
        raise GroupAxiomError("subgroup", "subset does not contain the identity")
    for x in sorted(a):
        if g.inv(x) not in a:
            raise GroupAxiomError("subgroup", f"inverse of {g.label(x)} missing", (x,))
        for y in sorted(a):
            if g.mul(x, y) not in a:
                raise GroupAxiomError("subgroup", f"{g.label(x)}*{g.label(y)} not in subset", (x, y))
    for x in sorted(a):
        for h in range(g.order):
            c = g.conj(x, h)
            if c not in a:
                raise GroupAxiomError(
                    "normality", f"{g.label(h)} {g.label(x)} {g.label(h)}^-1 leaves the subgroup",
                    (h, x, c))
    return a


def quotient(g: FiniteGroup, a: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, list[int]]:
    """The quotient ``G/A`` and the projection ``G -> G/A`` as an index list.

    Cosets are numbered by their least element, so the identity coset is 0
    whenever the identity of ``g`` is element 0.
    """
    a = check_normal_subgroup(g, a)
    proj = [-1] * g.order
    reps: list[int] = []
    for x in range(g.order):
        if proj[x] < 0:
            k = len(reps)
            reps.append(x)
            for y in a:
                proj[g.mul(x, y)] = k
    m = len(reps)
    table = np.array([[proj[g.mul(r, s)] for s in reps] for r in reps], dtype=_table_dtype(m))
    inv = [proj[g.inv(r)] for r in reps]
    labels = None
    if g.labels:
        labels = [g.label(r) + "~" for r in reps]
    return FiniteGroup(table, proj[g.identity], inv, labels, name=name), proj


@dataclass(frozen=True)
class Presentation:
    """``<alphabet | relators>``."""

    alphabet: Alphabet
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise ValueError(f"relator {r} is over {r.alphabet!r}, not {self.alphabet!r}")

    @classmethod
    def of(cls, gens: str, *relators: str) -> "Presentation":
        """``Presentation.of("x, y", "x^2", "y^3", "x y x y x y")``."""
        alph = Alphabet.of(gens)
        return cls(alph, tuple(alph.parse(r) for r in relators))

    def __str__(self) -> str:
        return f"< {', '.join(self.alphabet.names)} | {', '.join(map(str, self.relators))} >"


FREE, FINITE, PRESENTED = "free", "finite", "presented"


@dataclass(frozen=True, eq=False)
class FactorSpec:
    """A named free factor: a free group, a finite table, or an inert presentation."""

    name: str
    kind: str
    group: Alphabet | FiniteGroup | Presentation

    def __post_init__(self):
        expected = {FREE: Alphabet, FINITE: FiniteGroup, PRESENTED: Presentation}[self.kind]
        if not isinstance(self.group, expected):
            raise TypeError(f"{self.kind} factor needs a {expected.__name__}")

    @classmethod
    def free(cls, name: str, gens: str | Alphabet) -> "FactorSpec":
        return cls(name, FREE, gens if isinstance(gens, Alphabet) else Alphabet.of(gens))

    @classmethod
    def finite(cls, name: str, group: FiniteGroup) -> "FactorSpec":
        return cls(name, FINITE, group)

    @classmethod
    def presented(cls, name: str, pres: Presentation) -> "FactorSpec":
        return cls(name, PRESENTED, pres)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def _word_problem(self):
        if self.kind == PRESENTED:
            raise TypeError(f"factor {self.name} is presented; its elements cannot be multiplied "
                            "(no word problem is available)")

    def mul(self, a, b):
        self._word_problem()
        if self.kind == FINITE:
            return self.group.mul(a, b)
        return a * b

    def inv(self, a):
        self._word_problem()
        if self.kind == FINITE:
            return self.group.inv(a)
        return ~a

    def is_identity(self, a) -> bool:
        self._word_problem()
        if self.kind == FINITE:
            return a == self.group.identity
        return a.is_identity

    def check_element(self, a) -> None:
        self._word_problem()
        if self.kind == FINITE:
            if not (isinstance(a, (int, np.integer)) and 0 <= a < self.group.order):
                raise ValueError(f"{a!r} is not an element of {self.name}")
        elif not (isinstance(a, Word) and a.alphabet == self.group):
            raise ValueError(f"{a!r} is not a word over the generators of {self.name}")

    def format(self, a) -> str:
        if self.kind == FINITE:
            g = self.group
            return g.labels[a] if g.labels and g.labels[a] else f"{self.name}[{a}]"
        return str(a) if len(a.syllables) == 1 else f"({a})"


@dataclass(frozen=True, eq=False)
class FreeProductSpec:
    """Free product of named factors with a free group on ``variables``."""

    factors: tuple[FactorSpec, ...] = ()
    variables: Alphabet = field(default_factory=lambda: Alphabet([]))

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate factor names in {names}")
        clash = set(names) & set(self.variables.names)
        if clash:
            raise ValueError(f"names used both as factor and variable: {sorted(clash)}")

    def __eq__(self, other):
        if not isinstance(other, FreeProductSpec):
            return NotImplemented
        return (self.variables == other.variables and len(self.factors) == len(other.factors)
                and all(a.name == b.name and a.kind == b.kind and a.group == b.group
                        for a, b in zip(self.factors, other.factors)))

    def __hash__(self):
        return hash((self.variables, tuple(f.name for f in self.factors)))

    def factor(self, name: str) -> FactorSpec:
        for f in self.factors:
            if f.name == name:
                return f
        raise KeyError(f"no factor named {name!r}")

    def has_factor(self, name: str) -> bool:
        return any(f.name == name for f in self.factors)

    def without(self, name: str) -> "FreeProductSpec":
        self.factor(name)
        return FreeProductSpec(tuple(f for f in self.factors if f.name != name), self.variables)

    def replace(self, name: str, new: FactorSpec) -> "FreeProductSpec":
        self.factor(name)
        return FreeProductSpec(tuple(new if f.name == name else f for f in self.factors),
                               self.variables)

    def with_variables(self, variables: Alphabet) -> "FreeProductSpec":
        return FreeProductSpec(self.factors, variables)
