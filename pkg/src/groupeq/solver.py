"""Exhaustive solution search in finite groups and a catalogue of finite overgroups."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .groups import CLOSURE_CAP, FiniteGroup, _table_dtype, cyclic_group, direct_product, \
    symmetric_group
from .mixedwords import Const, EquationSystem, MixedWord, Var
from .words import GenSym

log = logging.getLogger(__name__)

DEFAULT_SEARCH_CAP = 10**8
DEFAULT_DEPTH = 4
MAX_DIRECT_FACTOR = 12


class SearchCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"assignment search exceeded {cap} nodes")
        self.cap = cap


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Embedding:
    """An injective homomorphism ``source -> target`` given on element indices."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]
    name: str

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        self.verify()

    def verify(self) -> None:
        m = np.asarray(self.map, dtype=np.int64)
        if len(m) != self.source.order:
            raise EmbeddingError(f"{self.name}: map has {len(m)} entries for {self.source.order} elements")
        if len(set(self.map)) != len(m):
            raise EmbeddingError(f"{self.name}: map is not injective")
        lhs = self.target.table[m[:, None], m[None, :]]
        rhs = m[self.source.table.astype(np.int64)]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = map(int, bad[0])
            raise EmbeddingError(f"{self.name}: f({a}*{b}) != f({a})*f({b})")

    def __call__(self, a: int) -> int:
        return self.map[a]


def identity_embedding(g: FiniteGroup, name: str | None = None) -> Embedding:
    return Embedding(g, g, tuple(range(g.order)), name or g.name or "G")


@dataclass
class Solution:
    where: Embedding
    assignment: dict[str, int]

    def describe(self) -> dict[str, str]:
        t = self.where.target
        return {x: t.label(v) for x, v in self.assignment.items()}


def _compile(w: MixedWord, emb: Embedding, factor: str | None):
    ops = []
    for s in w.syllables:
        if isinstance(s, Var):
            ops.append((s.gen, s.exp))
        else:
            if factor is not None and s.factor != factor:
                raise ValueError(f"constant from factor {s.factor!r}; the embedding covers {factor!r}")
            ops.append((None, emb.map[s.element]))
    return ops


def evaluate(w: MixedWord, emb: Embedding, assignment: Mapping[GenSym | str, int],
             factor: str | None = None) -> int:
    """Left-to-right product in ``emb.target``."""
    t = emb.target
    r = t.identity
    for gen, v in _compile(w, emb, factor):
        if gen is None:
            r = t.mul(r, v)
            continue
        if gen in assignment:
            x = assignment[gen]
        elif gen.name in assignment:
            x = assignment[gen.name]
        else:
            raise ValueError(f"variable {gen.name} is not assigned")
        r = t.mul(r, t.pow(x, v))
    return r


def _system_factor(sys: EquationSystem) -> str | None:
    used = sys.constant_factors()
    if len(used) > 1:
        raise ValueError(f"constants from several factors {used}")
    return used[0] if used else None


def solve_in(sys: EquationSystem, emb: Embedding, cap: int = DEFAULT_SEARCH_CAP,
             factor: str | None = None) -> Solution | None:
    """First solution in index order, or None after an exhaustive search.

    Variables are assigned in declaration order; an equation is evaluated as
    soon as its last variable is fixed.  Variables that occur nowhere are
    set to the identity.  Raises :class:`SearchCapExceeded` past ``cap``
    search nodes.
    """
    factor = factor if factor is not None else _system_factor(sys)
    t = emb.target
    tab = t.table.tolist()
    n = t.order
    # powers[e][x] = x^e, computed on demand
    powers: dict[int, list[int]] = {}

    def pw(e: int) -> list[int]:
        if e not in powers:
            powers[e] = [t.pow(x, e) for x in range(n)]
        return powers[e]

    order = [g for g in sys.spec.variables if any(
        isinstance(s, Var) and s.gen == g for w in sys.equations for s in w.syllables)]
    pos = {g: i for i, g in enumerate(order)}
    compiled = [_compile(w, emb, factor) for w in sys.equations]
    by_depth: list[list[list]] = [[] for _ in range(len(order) + 1)]
    for ops in compiled:
        last = max((pos[g] + 1 for g, _ in ops if g is not None), default=0)
        by_depth[last].append([(None if g is None else pos[g], v) for g, v in ops])
    for e in {v for ops in compiled for g, v in ops if g is not None}:
        pw(e)

    def holds(ops, vals) -> bool:
        r = t.identity
        for g, v in ops:
            r = tab[r][v] if g is None else tab[r][powers[v][vals[g]]]
        return r == t.identity

    if not all(holds(ops, []) for ops in by_depth[0]):
        return None
    vals: list[int] = []
    nodes = 0

    def dfs(d: int) -> bool:
        nonlocal nodes
        if d == len(order):
            return True
        for x in range(n):
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(cap)
            vals.append(x)
            if all(holds(ops, vals) for ops in by_depth[d + 1]) and dfs(d + 1):
                return True
            vals.pop()
        return False

    if not dfs(0):
        return None
    assignment = {g.name: t.identity for g in sys.spec.variables}
    assignment.update({g.name: v for g, v in zip(order, vals)})
    sol = Solution(emb, assignment)
    verify_solution(sys, sol, factor)
    return sol


def verify_solution(sys: EquationSystem, sol: Solution, factor: str | None = None) -> None:
    t = sol.where.target
    for i, w in enumerate(sys.equations):
        if evaluate(w, sol.where, sol.assignment, factor) != t.identity:
            raise AssertionError(f"equation {i} does not vanish under {sol.assignment}")


def wreath_cyclic(g: FiniteGroup, k: int) -> FiniteGroup:
    """``G ≀ C_k = G^k ⋊ C_k`` with ``(f, s)(f', s') = (i ↦ f_i f'_{i+s}, s + s')``.

    Element ``(f, s)`` has index ``code(f) * k + s`` where ``code`` reads
    ``f`` as base-``|G|`` digits, most significant first.
    """
    m = g.order
    nf = m**k
    n = nf * k
    digits = np.array(list(itertools.product(range(m), repeat=k)), dtype=np.int64).reshape(nf, k)
    weights = m ** np.arange(k - 1, -1, -1, dtype=np.int64)
    gt = g.table.astype(np.int64)
    table = np.empty((n, n), dtype=_table_dtype(n))
    shifted = [np.roll(digits, -s, axis=1) for s in range(k)]  # row j: i -> f'_{i+s}
    for fa in range(nf):
        for s in range(k):
            # f_i * f'_{i+s} for every f'
            prod = gt[digits[fa][None, :], shifted[s]] @ weights
            row = (prod[:, None] * k + (s + np.arange(k)[None, :]) % k).ravel()
            table[fa * k + s] = row
    ident = int(np.full(k, g.identity, dtype=np.int64) @ weights) * k
    inv = np.argmax(table == ident, axis=1)
    labels = None
    if g.labels:
        labels = ["(" + ",".join(g.label(int(d)) for d in digits[fa]) + f";{s})"
                  for fa in range(nf) for s in range(k)]
    return FiniteGroup(table, ident, inv, labels, name=f"wreath({g.name},C{k})")


def _group_name(g: FiniteGroup, fallback: str = "G") -> str:
    return g.name or fallback


def iter_catalogue(g: FiniteGroup, depth: int = DEFAULT_DEPTH, cap: int = CLOSURE_CAP,
                   registered: Sequence[Embedding] = ()) -> Iterator[Embedding]:
    """Overgroups of ``g`` in a fixed order, built lazily.

    Identity; ``G × C_n`` for ``n = 1..12``; ``G ≀ C_k`` for ``k = 2..depth``
    with the diagonal embedding; the regular embedding into ``S_|G|``; then
    ``registered``.  Members of order above ``cap`` are skipped with a
    logged notice.
    """
    name = _group_name(g)
    m = g.order
    yield identity_embedding(g, name)
    for n in range(1, MAX_DIRECT_FACTOR + 1):
        if m * n > cap:
            log.info("skipping %sxC%d: order %d exceeds cap %d", name, n, m * n, cap)
            continue
        target = direct_product(g, cyclic_group(n), name=f"{name}xC{n}")
        yield Embedding(g, target, tuple(a * n for a in range(m)), target.name)
    for k in range(2, depth + 1):
        if m**k * k > cap:
            log.info("skipping wreath(%s,C%d): order %d exceeds cap %d", name, k, m**k * k, cap)
            continue
        target = wreath_cyclic(g, k)
        weights = sum(m**i for i in range(k))  # code of (a, ..., a) is a * (m^(k-1) + ... + 1)
        yield Embedding(g, target, tuple(a * weights * k for a in range(m)),
                        f"wreath({name},C{k})")
    if m == 1 or _factorial_within(m, cap):
        sym = symmetric_group(m, cap=cap)
        where = {p: i for i, p in enumerate(sym.perms)}
        tab = g.table.tolist()
        # right-regular action: element a sends i to i*a
        img = tuple(where[tuple(tab[i][a] for i in range(m))] for a in range(m))
        yield Embedding(g, sym, img, f"S{m}")
    else:
        log.info("skipping S%d: order %d! exceeds cap %d", m, m, cap)
    for emb in registered:
        if emb.source is not g and not np.array_equal(emb.source.table, g.table):
            raise EmbeddingError(f"registered embedding {emb.name} has a different source")
        yield emb


def _factorial_within(m: int, cap: int) -> bool:
    f = 1
    for i in range(2, m + 1):
        f *= i
        if f > cap:
            return False
    return True


def overgroup_catalogue(g: FiniteGroup, depth: int = DEFAULT_DEPTH, cap: int = CLOSURE_CAP,
                        registered: Sequence[Embedding] = ()) -> list[Embedding]:
    return list(iter_catalogue(g, depth, cap, registered))


NONE, SOLVED, CAPPED = "none", "solved", "cap exceeded"


@dataclass
class SolveReport:
    solution: Solution | None
    attempts: list[tuple[str, int, str]] = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def inconclusive(self) -> bool:
        """No solution found.  This never means the system is unsolvable."""
        return self.solution is None


def solve_over(sys: EquationSystem, g: FiniteGroup | None = None, budget: int | None = None,
               depth: int = DEFAULT_DEPTH, cap: int = CLOSURE_CAP,
               search_cap: int = DEFAULT_SEARCH_CAP,
               registered: Sequence[Embedding] = ()) -> SolveReport:
    """Try :func:`solve_in` on each catalogue member until one succeeds.

    ``g`` defaults to the finite factor supplying the constants (or the
    trivial group).  ``budget`` bounds the number of members tried.
    """
    factor = _system_factor(sys)
    if g is None:
        if factor is None:
            g = cyclic_group(1, name="1")
        else:
            f = sys.spec.factor(factor)
            if not f.is_finite:
                raise ValueError(f"factor {factor} is not finite")
            g = f.group
            if g.name is None:
                g = FiniteGroup(g.table, g.identity, g.inverses, g.labels, g.perms, factor)
    report = SolveReport(None)
    for k, emb in enumerate(iter_catalogue(g, depth, cap, registered)):
        if budget is not None and k >= budget:
            report.budget_exhausted = True
            break
        try:
            sol = solve_in(sys, emb, search_cap, factor)
        except SearchCapExceeded:
            report.attempts.append((emb.name, emb.target.order, CAPPED))
            continue
        if sol is None:
            report.attempts.append((emb.name, emb.target.order, NONE))
            continue
        report.attempts.append((emb.name, emb.target.order, SOLVED))
        report.solution = sol
        break
    return report
