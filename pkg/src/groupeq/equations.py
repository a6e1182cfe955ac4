"""Exponent-sum matrices and nonsingularity of equation systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .mixedwords import EquationSystem, Var
from .words import Alphabet, GenSym, Word, exponent_vector
from .zlinalg import IntMatrix, left_kernel_vector, rows_independent


@dataclass(frozen=True)
class ExponentMatrix:
    """Row ``i``, column ``j``: exponent sum of variable ``j`` in equation ``i``."""

    matrix: IntMatrix
    row_labels: tuple[int, ...]
    col_labels: tuple[GenSym, ...]

    def __str__(self) -> str:
        head = "      " + " ".join(f"{g.name:>6}" for g in self.col_labels)
        lines = [head] + [f"eq{i:<3} " + " ".join(f"{x:>6}" for x in row)
                          for i, row in zip(self.row_labels, self.matrix.entries)]
        return "\n".join(lines)


def relator_matrix(words: Sequence[Word], alphabet: Alphabet) -> IntMatrix:
    """Exponent-sum rows of plain words over ``alphabet``."""
    rows = []
    for w in words:
        if w.alphabet != alphabet:
            raise ValueError(f"{w} is not over {alphabet!r}")
        rows.append(exponent_vector(w))
    return IntMatrix(rows, len(alphabet))


def exponent_matrix(sys: EquationSystem) -> ExponentMatrix:
    """Rows are the exponent vectors of the contents, summed straight off the syllables."""
    alph = sys.spec.variables
    rows = []
    for w in sys.equations:
        row = [0] * len(alph)
        for s in w.syllables:
            if isinstance(s, Var):
                row[s.gen.id] += s.exp
        rows.append(row)
    m = IntMatrix(rows, len(alph))
    return ExponentMatrix(m, tuple(range(len(sys))), sys.spec.variables.gens)


def is_nonsingular(sys: EquationSystem) -> bool:
    """Exponent-sum rows linearly independent.  The empty system is nonsingular."""
    return rows_independent(exponent_matrix(sys).matrix)


def dependency(sys: EquationSystem) -> list[int] | None:
    """Integer coefficients of a vanishing row combination, or None."""
    return left_kernel_vector(exponent_matrix(sys).matrix)
