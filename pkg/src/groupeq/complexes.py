"""Combinatorial 2-complexes: standard complexes, covers, cellular homology.

Nothing here looks at Schreier transversals.  The cover of a standard
complex is built from the coset action alone and its second homology is
read off the boundary matrix, which keeps :func:`criterion_check` an
honest comparison of two independent computations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import CosetTable, letters, subgroup_presentation
from .equations import relator_matrix
from .groups import Presentation
from .words import GenSym
from .zlinalg import IntMatrix, rank, rows_independent, snf

# A signed edge: (edge index, +1 or -1).
SignedEdge = tuple[int, int]


@dataclass(frozen=True)
class TwoComplex:
    vertices: int
    edges: tuple[tuple[int, int, GenSym], ...]
    faces: tuple[tuple[SignedEdge, ...], ...]

    def __post_init__(self):
        for k, face in enumerate(self.faces):
            if not face:
                continue
            ends = [self._ends(e, s) for e, s in face]
            for (_, a), (b, _) in zip(ends, ends[1:] + ends[:1]):
                if a != b:
                    raise ValueError(f"boundary of face {k} is not a closed edge path")

    def _ends(self, e: int, s: int) -> tuple[int, int]:
        src, dst, _ = self.edges[e]
        return (src, dst) if s > 0 else (dst, src)

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - len(self.edges) + len(self.faces)

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self.vertices, len(self.edges), len(self.faces)


def standard_complex(pres: Presentation) -> TwoComplex:
    """One vertex, a loop per generator, a face per relator."""
    edges = tuple((0, 0, g) for g in pres.alphabet)
    faces = tuple(tuple((col // 2, -1 if col & 1 else 1) for col in letters(r))
                  for r in pres.relators)
    return TwoComplex(1, edges, faces)


def covering_complex(pres: Presentation, table: CosetTable) -> TwoComplex:
    """The cover with one vertex per coset, edge ``(c, c·x)`` per coset and
    generator, and each relator lifted at every coset.
    """
    r = len(pres.alphabet)
    n = table.index
    act = table.action
    edges = tuple((c, act[c][2 * i], g) for c in range(n) for i, g in enumerate(pres.alphabet))
    faces = []
    for rel in pres.relators:
        cols = letters(rel)
        for c in range(n):
            v = c
            path = []
            for col in cols:
                i = col // 2
                if col & 1:
                    u = act[v][col]
                    path.append((u * r + i, -1))
                    v = u
                else:
                    path.append((v * r + i, 1))
                    v = act[v][col]
            faces.append(tuple(path))
    return TwoComplex(n, edges, tuple(faces))


@dataclass(frozen=True)
class ChainBoundaries:
    """``d2``: faces × edges; ``d1``: edges × vertices (target minus source)."""

    d2: IntMatrix
    d1: IntMatrix


def boundaries(k: TwoComplex) -> ChainBoundaries:
    ne = len(k.edges)
    d2 = [[0] * ne for _ in k.faces]
    for f, face in enumerate(k.faces):
        for e, s in face:
            d2[f][e] += s
    d1 = [[0] * k.vertices for _ in k.edges]
    for e, (src, dst, _) in enumerate(k.edges):
        d1[e][dst] += 1
        d1[e][src] -= 1
    out = ChainBoundaries(IntMatrix(d2, ne), IntMatrix(d1, k.vertices))
    if not (out.d2 @ out.d1).is_zero():
        raise ArithmeticError("d1 o d2 != 0")
    return out


@dataclass(frozen=True)
class Homology:
    b0: int
    h1_torsion: tuple[int, ...]
    b1: int
    b2: int

    def h1(self) -> str:
        parts = [f"Z/{d}" for d in self.h1_torsion]
        if self.b1:
            parts.append("Z" if self.b1 == 1 else f"Z^{self.b1}")
        return " + ".join(parts) if parts else "0"


def _components(k: TwoComplex) -> int:
    parent = list(range(k.vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for src, dst, _ in k.edges:
        parent[find(src)] = find(dst)
    return len({find(v) for v in range(k.vertices)})


def homology(k: TwoComplex) -> Homology:
    """Integral homology; with no 3-cells ``H2 = ker d2`` is free."""
    bd = boundaries(k)
    r1 = rank(bd.d1)
    s2 = snf(bd.d2)
    torsion = tuple(d for d in s2.invariant_factors if d > 1)
    return Homology(
        b0=_components(k),
        h1_torsion=torsion,
        b1=len(k.edges) - r1 - s2.rank,
        b2=len(k.faces) - s2.rank,
    )


def h2_trivial(k: TwoComplex) -> bool:
    return rank(boundaries(k).d2) == len(k.faces)


@dataclass(frozen=True)
class CriterionReport:
    """``h2_trivial`` from the cover; ``schreier_nonsingular`` from the
    Reidemeister–Schreier relators.  The two must agree."""

    h2_trivial: bool
    schreier_nonsingular: bool
    index: int

    @property
    def agree(self) -> bool:
        return self.h2_trivial == self.schreier_nonsingular


def criterion_check(pres: Presentation, table: CosetTable) -> CriterionReport:
    h2 = h2_trivial(covering_complex(pres, table))
    sp = subgroup_presentation(pres, table)
    ns = rows_independent(relator_matrix(sp.relators, sp.alphabet))
    return CriterionReport(h2, ns, table.index)
