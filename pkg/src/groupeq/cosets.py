"""Coset enumeration and Reidemeister–Schreier rewriting.

Letters are encoded as table columns: generator ``i`` is column ``2*i`` and
its inverse is column ``2*i + 1``, so ``col ^ 1`` inverts a letter.  All
tables returned from this module are complete, verified and standardized
(cosets numbered in breadth-first discovery order from coset 0 under the
column order x, x⁻¹, y, y⁻¹, ...).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .groups import Presentation
from .zlinalg import IntMatrix
from .words import Alphabet, GenSym, Word, invert, multiply, reduce

DEFAULT_MAX_COSETS = 100_000


class CosetEnumerationIncomplete(RuntimeError):
    """Coset enumeration ran out of room: the index may be infinite or the bound too small."""

    def __init__(self, max_cosets: int):
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")
        self.max_cosets = max_cosets


class CosetTableError(ValueError):
    pass


def letters(w: Word) -> list[int]:
    """Column codes of the letters of ``w``."""
    return [2 * g.id + (0 if s > 0 else 1) for g, s in w.letters()]


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Complete action of the generators on the right cosets of a subgroup.

    ``action[c][2*i]`` is ``c·x_i`` and ``action[c][2*i+1]`` is ``c·x_i⁻¹``.
    Coset 0 is the subgroup itself.
    """

    presentation: Presentation
    action: tuple[tuple[int, ...], ...]
    subgroup_gens: tuple[Word, ...] | None = None

    def __eq__(self, other):
        if not isinstance(other, CosetTable):
            return NotImplemented
        return self.presentation == other.presentation and self.action == other.action

    def __hash__(self):
        return hash(self.action)

    def __len__(self) -> int:
        return len(self.action)

    @property
    def index(self) -> int:
        return len(self.action)

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    def act(self, c: int, g: GenSym, sign: int = 1) -> int:
        return self.action[c][2 * g.id + (0 if sign > 0 else 1)]

    def trace(self, c: int, w: Word) -> int:
        for col in letters(w):
            c = self.action[c][col]
        return c

    def permutations(self) -> list[tuple[int, ...]]:
        """Each generator as a permutation of the cosets (image lists)."""
        return [tuple(row[2 * i] for row in self.action) for i in range(len(self.alphabet))]

    def verify(self) -> None:
        """Re-check completeness, inverse consistency and every relator at every coset."""
        n = len(self.action)
        ncols = 2 * len(self.alphabet)
        for c, row in enumerate(self.action):
            if len(row) != ncols:
                raise CosetTableError(f"row {c} has {len(row)} columns, expected {ncols}")
            for col, d in enumerate(row):
                if not (isinstance(d, int) and 0 <= d < n):
                    raise CosetTableError(f"entry ({c},{col}) undefined or out of range")
                if self.action[d][col ^ 1] != c:
                    raise CosetTableError(f"entry ({c},{col}) = {d} has no matching inverse entry")
        for r in self.presentation.relators:
            cols = letters(r)
            for c in range(n):
                d = c
                for col in cols:
                    d = self.action[d][col]
                if d != c:
                    raise CosetTableError(f"relator {r} does not close at coset {c}")
        if self.subgroup_gens:
            for w in self.subgroup_gens:
                if self.trace(0, w) != 0:
                    raise CosetTableError(f"subgroup generator {w} does not fix coset 0")


def _standardize(table: list[list[int]], start: int = 0) -> tuple[tuple[int, ...], ...]:
    new = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        for d in table[order[i]]:
            if d not in new:
                new[d] = len(order)
                order.append(d)
        i += 1
    return tuple(tuple(new[d] for d in table[c]) for c in order)


class _Enumerator:
    """HLT coset enumeration with Holt-style coincidence processing."""

    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max = max_cosets
        self.table: list[list[int | None]] = [[None] * ncols]
        self.p: list[int] = [0]

    def rep(self, c: int) -> int:
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def alive(self, c: int) -> bool:
        return self.p[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max:
            raise CosetEnumerationIncomplete(self.max)
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def merge(self, k: int, l: int, q: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k != l:
            lo, hi = min(k, l), max(k, l)
            self.p[hi] = lo
            q.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        q: list[int] = []
        self.merge(a, b, q)
        i = 0
        while i < len(q):
            e = q[i]
            i += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f is None:
                    continue
                t[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] is not None:
                    self.merge(f1, t[e1][x], q)
                elif t[f1][x ^ 1] is not None:
                    self.merge(e1, t[f1][x ^ 1], q)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, w: Sequence[int]) -> None:
        t = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] is not None:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] is not None:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self, relators: list[list[int]], subgens: list[list[int]]) -> list[list[int]]:
        for w in subgens:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for r in relators:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, r)
            if self.alive(c):
                for x in range(self.ncols):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1
        live = [c for c in range(len(self.table)) if self.alive(c)]
        return {c: [self.rep(d) for d in self.table[c]] for c in live}


def todd_coxeter(pres: Presentation, subgens: Iterable[Word] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the right cosets of ``<subgens>`` in the group ``pres``.

    Raises :class:`CosetEnumerationIncomplete` once ``max_cosets`` cosets
    have been defined.
    """
    subgens = tuple(subgens)
    for w in subgens:
        if w.alphabet != pres.alphabet:
            raise ValueError(f"subgroup generator {w} is not over {pres.alphabet!r}")
    ncols = 2 * len(pres.alphabet)
    if ncols == 0:
        return CosetTable(pres, ((),), subgens)
    rows = _Enumerator(ncols, max_cosets).run([letters(r) for r in pres.relators],
                                               [letters(w) for w in subgens])
    table = CosetTable(pres, _standardize(rows), subgens)
    table.verify()
    return table


@dataclass(frozen=True)
class SchreierTransversal:
    """Breadth-first spanning tree of the coset graph and its representatives.

    ``tree[c]`` is ``(parent, column)`` for ``c != 0``.  ``generators`` lists
    the non-tree edges ``(t, x)`` in order; they name the Schreier generators
    ``y[t,x] = rep(t) · x · rep(t·x)⁻¹`` and form ``alphabet``.
    """

    reps: tuple[Word, ...]
    tree: tuple[tuple[int, int] | None, ...]
    tree_edges: frozenset[tuple[int, int]]
    generators: tuple[tuple[int, GenSym], ...]
    alphabet: Alphabet

    def y(self, t: int, x: GenSym) -> GenSym:
        return self.alphabet[_y_name(t, x)]

    def definition(self, t: int, x: GenSym, table: CosetTable) -> Word:
        """``rep(t) · x · rep(t·x)⁻¹`` as a word in the original generators."""
        xw = Word(((x, 1),), table.alphabet)
        return multiply(multiply(self.reps[t], xw), invert(self.reps[table.act(t, x)]))


def _y_name(t: int, x: GenSym) -> str:
    return f"y[{t},{x.name}]"


def schreier_transversal(table: CosetTable) -> SchreierTransversal:
    alph = table.alphabet
    n = table.index
    tree: list[tuple[int, int] | None] = [None] * n
    reps: list[Word | None] = [None] * n
    reps[0] = alph.identity()
    queue = [0]
    for c in queue:
        for col, d in enumerate(table.action[c]):
            if reps[d] is None:
                tree[d] = (c, col)
                g = alph[col // 2]
                reps[d] = multiply(reps[c], Word(((g, -1 if col & 1 else 1),), alph))
                queue.append(d)
    edges = set()
    for d, te in enumerate(tree):
        if te is None:
            continue
        c, col = te
        edges.add((c, col // 2) if col % 2 == 0 else (d, col // 2))
    gens = tuple((t, g) for t in range(n) for g in alph if (t, g.id) not in edges)
    y_alph = Alphabet(_y_name(t, g) for t, g in gens)
    return SchreierTransversal(tuple(reps), tuple(tree), frozenset(edges), gens, y_alph)


def rewrite(w: Word, table: CosetTable, transversal: SchreierTransversal) -> Word:
    """Reidemeister rewriting of ``w`` (which must fix coset 0) into Schreier generators."""
    out = []
    c = 0
    for g, s in w.letters():
        if s > 0:
            t = c
            c = table.action[c][2 * g.id]
        else:
            c = table.action[c][2 * g.id + 1]
            t = c
        if (t, g.id) not in transversal.tree_edges:
            out.append((transversal.y(t, g), s))
    if c != 0:
        raise ValueError(f"{w} does not return to coset 0 (ends at coset {c})")
    return reduce(out, transversal.alphabet)


@dataclass(frozen=True)
class SubgroupPresentation:
    """Reidemeister–Schreier presentation of the subgroup behind a coset table."""

    gens: tuple[tuple[int, GenSym], ...]
    alphabet: Alphabet
    relators: tuple[Word, ...]
    presentation: Presentation
    table: CosetTable = field(repr=False)
    transversal: SchreierTransversal = field(repr=False)
    # (t, r) that produced each relator
    sources: tuple[tuple[int, int], ...] = ()

    def as_presentation(self) -> Presentation:
        return Presentation(self.alphabet, self.relators)


def subgroup_presentation(pres: Presentation, table: CosetTable) -> SubgroupPresentation:
    """Generators: all non-tree ``y[t,x]``.  Relators: ``rewrite(t r t⁻¹)``
    for every coset ``t`` and relator ``r``, empty ones included.
    """
    if table.presentation != pres:
        raise ValueError("coset table belongs to a different presentation")
    tv = schreier_transversal(table)
    rels, sources = [], []
    for t, rep in enumerate(tv.reps):
        for k, r in enumerate(pres.relators):
            rels.append(rewrite(multiply(multiply(rep, r), invert(rep)), table, tv))
            sources.append((t, k))
    return SubgroupPresentation(tv.generators, tv.alphabet, tuple(rels), pres, table, tv,
                                tuple(sources))


MAX_PERIOD = 16


def _compress(word: Sequence[int], max_period: int = MAX_PERIOD) -> list[tuple[tuple[int, ...], int]]:
    """Split a letter sequence into blocks ``(u, m)`` meaning ``u`` repeated ``m`` times."""
    out: list[tuple[tuple[int, ...], int]] = []
    literal: list[int] = []
    i, L = 0, len(word)
    while i < L:
        best_p, best_r = 1, 1
        for p in range(1, min(max_period, (L - i) // 2) + 1):
            u = word[i:i + p]
            r = 1
            while i + (r + 1) * p <= L and word[i + r * p:i + (r + 1) * p] == u:
                r += 1
            if r > 1 and r * p > best_r * best_p:
                best_p, best_r = p, r
        if best_r > 2 or best_r * best_p > 8:
            if literal:
                out.append((tuple(literal), 1))
                literal = []
            out.append((tuple(word[i:i + best_p]), best_r))
            i += best_p * best_r
        else:
            literal.append(word[i])
            i += 1
    if literal:
        out.append((tuple(literal), 1))
    return out


class Blocks:
    """A relator as repeated blocks, traced through partial coset tables.

    Tracing ``u^m`` stops iterating once the coset at the start of ``u``
    repeats: the rest of the power is periodic, so only ``m`` modulo the
    cycle length is left to do.  Positions reported are letter positions
    in the expanded word.
    """

    def __init__(self, word: Sequence[int], max_period: int = MAX_PERIOD):
        word = list(word)
        self.blocks = _compress(word, max_period) if max_period else [(tuple(word), 1)]
        self.length = len(word)
        self.starts = []
        pos = 0
        for u, m in self.blocks:
            self.starts.append(pos)
            pos += len(u) * m
        self.rev = [(tuple(x ^ 1 for x in reversed(u)), m) for u, m in reversed(self.blocks)]

    def letter(self, i: int) -> int:
        k = bisect_right(self.starts, i) - 1
        u, _ = self.blocks[k]
        return u[(i - self.starts[k]) % len(u)]

    @staticmethod
    def _trace(t, c: int, blocks) -> tuple[int, int]:
        pos = 0
        for u, m in blocks:
            lu = len(u)
            seen: dict[int, int] | None = {} if m > 1 else None
            k = 0
            while k < m:
                if seen is not None:
                    if c in seen:
                        k = m - (m - k) % (k - seen[c])
                        seen = None
                        if k == m:
                            break
                    else:
                        seen[c] = k
                g = c
                for off, x in enumerate(u):
                    nxt = t[g][x]
                    if nxt is None:
                        return g, pos + k * lu + off
                    g = nxt
                c = g
                k += 1
            pos += m * lu
        return c, pos

    def forward(self, t, c: int) -> tuple[int, int]:
        """Coset reached and letters consumed before the first undefined entry."""
        return self._trace(t, c, self.blocks)

    def backward(self, t, c: int) -> tuple[int, int]:
        """The same, reading the inverse word from the end."""
        return self._trace(t, c, self.rev)


def schreier_exponent_matrix(pres: Presentation, table: CosetTable,
                             transversal: SchreierTransversal | None = None) -> IntMatrix:
    """Exponent-sum rows of the Schreier relators, without writing them out.

    Row ``(t, r)`` counts the non-tree edges crossed by ``r`` read from
    coset ``t``; the transversal parts of ``t r t⁻¹`` run along tree edges
    and contribute nothing.  Matches ``relator_matrix`` of
    :func:`subgroup_presentation` row for row.
    """
    tv = transversal or schreier_transversal(table)
    col = {(t, g.id): k for k, (t, g) in enumerate(tv.generators)}
    act = table.action
    rels = [Blocks(letters(r)).blocks for r in pres.relators]
    rows = []
    for t in range(table.index):
        for blocks in rels:
            row = [0] * len(col)
            c = t
            for u, m in blocks:
                seen: dict[int, tuple[int, list[int]]] = {}
                k = 0
                while k < m:
                    if c in seen:
                        k0, before = seen[c]
                        period = k - k0
                        reps = (m - k) // period
                        if reps:
                            for j, v in enumerate(row):
                                row[j] = v + reps * (v - before[j])
                            k += reps * period
                        seen.clear()
                        if k == m:
                            break
                    if m > 1:
                        seen[c] = (k, row[:])
                    for x in u:
                        if x & 1:
                            c = act[c][x]
                            e = col.get((c, x >> 1))
                            if e is not None:
                                row[e] -= 1
                        else:
                            e = col.get((c, x >> 1))
                            if e is not None:
                                row[e] += 1
                            c = act[c][x]
                    k += 1
            if c != t:
                raise CosetTableError(f"relator does not close at coset {t}")
            rows.append(row)
    return IntMatrix(rows, len(col))


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, tables, exhausted):
        super().__init__(f"low-index search budget exhausted on branches {exhausted}")
        self.tables = tables
        self.exhausted = exhausted


@dataclass
class LowIndexSearch:
    """Outcome of a low-index search; ``exhausted`` lists top-level branches
    (by choice number) that hit the node budget."""

    tables: list[CosetTable]
    exhausted: list[int]
    nodes: int

    @property
    def complete(self) -> bool:
        return not self.exhausted


class _Budget(Exception):
    pass


def _low_index_keys(pres: Presentation, max_index: int, budget: int | None,
                    exhausted: list[int], counter: list[int]) -> Iterator[tuple]:
    """Sims-style backtracking; yields each complete table once, already
    standardized (new cosets are only ever defined at the first open slot).
    Top-level branches that run out of ``budget`` are appended to ``exhausted``;
    ``counter[0]`` accumulates search nodes.
    """
    ncols = 2 * len(pres.alphabet)
    rels = [Blocks(letters(r)) for r in pres.relators]
    branch_nodes = 0

    def propagate(t: list[list[int | None]], n: int) -> bool:
        changed = True
        while changed:
            changed = False
            for c in range(n):
                for w in rels:
                    f, i = w.forward(t, c)
                    if i == w.length:
                        if f != c:
                            return False
                        continue
                    b, k = w.backward(t, c)
                    j = w.length - 1 - k
                    if j < i:
                        # the entry at i is defined backwards but not forwards
                        return False
                    if j == i:
                        x = w.letter(i)
                        if t[b][x ^ 1] is not None:
                            return False
                        t[f][x] = b
                        t[b][x ^ 1] = f
                        changed = True
        return True

    def search(t, n):
        nonlocal branch_nodes
        counter[0] += 1
        branch_nodes += 1
        if budget is not None and branch_nodes > budget:
            raise _Budget
        for c in range(n):
            row = t[c]
            for x in range(ncols):
                if row[x] is None:
                    break
            else:
                continue
            break
        else:
            yield tuple(tuple(r) for r in t[:n])
            return
        inv = x ^ 1
        for d in range(n):
            if t[d][inv] is None:
                t2 = [r[:] for r in t]
                t2[c][x] = d
                t2[d][inv] = c
                if propagate(t2, n):
                    yield from search(t2, n)
        if n < max_index:
            t2 = [r[:] for r in t] + [[None] * ncols]
            t2[c][x] = n
            t2[n][inv] = c
            if propagate(t2, n + 1):
                yield from search(t2, n + 1)

    # top-level branches: the image of coset 0 under the first column
    choices = [0] + ([1] if max_index > 1 else [])
    for k, d in enumerate(choices):
        branch_nodes = 0
        t = [[None] * ncols for _ in range(d + 1)]
        t[0][0] = d
        t[d][1] = 0
        try:
            if propagate(t, d + 1):
                yield from search(t, d + 1)
        except _Budget:
            exhausted.append(k)


def iter_low_index(pres: Presentation, max_index: int) -> Iterator[CosetTable]:
    """Every subgroup of index at most ``max_index``, lazily and without a
    budget, in search order.  Memory stays proportional to one table."""
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    if not pres.alphabet.gens:
        yield CosetTable(pres, ((),))
        return
    for key in _low_index_keys(pres, max_index, None, [], [0]):
        ct = CosetTable(pres, key)
        ct.verify()
        yield ct


def enumerate_low_index(pres: Presentation, max_index: int,
                        budget: int | None = None) -> LowIndexSearch:
    """Sims-style backtracking over partial coset tables with at most
    ``max_index`` cosets.  ``budget`` caps search nodes per top-level branch.
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    if not pres.alphabet.gens:
        return LowIndexSearch([CosetTable(pres, ((),))], [], 1)
    exhausted: list[int] = []
    counter = [0]
    found = list(_low_index_keys(pres, max_index, budget, exhausted, counter))
    tables = []
    for key in sorted(found, key=lambda a: (len(a), a)):
        ct = CosetTable(pres, key)
        ct.verify()
        tables.append(ct)
    return LowIndexSearch(tables, exhausted, counter[0])


def low_index_subgroups(pres: Presentation, max_index: int,
                        budget: int | None = None) -> list[CosetTable]:
    """All subgroups of index at most ``max_index``, one standardized coset
    table each, sorted by index and then by table.

    Raises :class:`EnumerationBudgetExceeded` (carrying the tables found so
    far) if some branch runs out of ``budget``.
    """
    res = enumerate_low_index(pres, max_index, budget)
    if res.exhausted:
        raise EnumerationBudgetExceeded(res.tables, res.exhausted)
    return res.tables
