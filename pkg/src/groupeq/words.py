"""Words in free groups, stored as run-length syllables.

A :class:`Word` is a freely reduced tuple of ``(GenSym, exponent)`` pairs.
Exponents are Python ints, so ``x^2022`` costs one syllable no matter how
large the exponent is.  Letter-by-letter expansion only happens where an
algorithm genuinely needs it (coset tracing, period detection) and is
guarded by :data:`MAX_LETTERS`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

# Upper bound on letter expansions; beyond this the caller gets a ValueError
# instead of an allocation that never finishes.
MAX_LETTERS = 10_000_000


@dataclass(frozen=True, order=True)
class GenSym:
    """A generator symbol: its position ``id`` in an alphabet and its name."""

    id: int
    name: str

    def __str__(self) -> str:
        return self.name


class Alphabet:
    """Ordered, named generating set of a free group."""

    __slots__ = ("gens", "_by_name")

    def __init__(self, names: Iterable[str]):
        names = list(names)
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise ValueError(f"duplicate generator name {dup!r}")
        self.gens: tuple[GenSym, ...] = tuple(GenSym(i, n) for i, n in enumerate(names))
        self._by_name = {g.name: g for g in self.gens}

    @classmethod
    def of(cls, names: str | Iterable[str]) -> "Alphabet":
        """``Alphabet.of("x, y")`` or ``Alphabet.of(["x", "y"])``."""
        if isinstance(names, str):
            names = [n for n in re.split(r"[\s,]+", names) if n]
        return cls(names)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self) -> Iterator[GenSym]:
        return iter(self.gens)

    def __getitem__(self, key: int | str) -> GenSym:
        if isinstance(key, str):
            return self._by_name[key]
        return self.gens[key]

    def __contains__(self, g: object) -> bool:
        return isinstance(g, GenSym) and g.id < len(self.gens) and self.gens[g.id] == g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        return f"Alphabet({[g.name for g in self.gens]!r})"

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.gens]

    def identity(self) -> "Word":
        return Word((), self)

    def gen(self, name: str) -> "Word":
        return Word(((self[name], 1),), self)

    def word(self, pairs: Iterable[tuple[str | GenSym, int]]) -> "Word":
        raw = [(g if isinstance(g, GenSym) else self[g], e) for g, e in pairs]
        return reduce(raw, self)

    def parse(self, text: str) -> "Word":
        """Parse a plain letter string such as ``"x y^2 x^-1"``.

        Only generators and integer powers; the full grammar with brackets
        and commutators lives in :mod:`groupeq.parsing`.
        """
        raw = []
        for tok in text.replace("*", " ").split():
            name, _, exp = tok.partition("^")
            if name == "1":
                continue
            raw.append((self[name], int(exp) if exp else 1))
        return reduce(raw, self)


@dataclass(frozen=True)
class Word:
    """Freely reduced element of the free group on ``alphabet``."""

    syllables: tuple[tuple[GenSym, int], ...]
    alphabet: Alphabet

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        """Letter length (sum of absolute exponents)."""
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> Iterator[tuple[GenSym, int]]:
        """Yield ``(gen, ±1)`` letter by letter."""
        if len(self) > MAX_LETTERS:
            raise ValueError(f"word has {len(self)} letters, more than MAX_LETTERS={MAX_LETTERS}")
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s


def reduce(raw: Iterable[tuple[GenSym, int]], alphabet: Alphabet) -> Word:
    """Freely reduce a sequence of ``(gen, exponent)`` pairs."""
    out: list[tuple[GenSym, int]] = []
    for g, e in raw:
        if g not in alphabet:
            raise ValueError(f"generator {g} is not in {alphabet!r}")
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e:
                out.append((g, e))
        else:
            out.append((g, e))
    return Word(tuple(out), alphabet)


def _check_same(a: Word, b: Word) -> None:
    if a.alphabet != b.alphabet:
        raise ValueError(f"alphabet mismatch: {a.alphabet!r} vs {b.alphabet!r}")


def multiply(a: Word, b: Word) -> Word:
    _check_same(a, b)
    return reduce(a.syllables + b.syllables, a.alphabet)


def invert(a: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(a.syllables)), a.alphabet)


def power(a: Word, k: int) -> Word:
    if k < 0:
        return power(invert(a), -k)
    if len(a.syllables) == 1:
        g, e = a.syllables[0]
        return reduce([(g, e * k)], a.alphabet)
    core, conj = cyclic_reduce(a)
    # only the cyclically reduced core needs repeating
    body = core.syllables * k if k else ()
    return reduce(conj.syllables + body + invert(conj).syllables, a.alphabet)


def conjugate(w: Word, by: Word) -> Word:
    """``by · w · by⁻¹``."""
    return multiply(multiply(by, w), invert(by))


def is_cyclically_reduced(w: Word) -> bool:
    s = w.syllables
    if len(s) < 2:
        return True
    (g0, e0), (g1, e1) = s[0], s[-1]
    return not (g0 == g1 and (e0 > 0) != (e1 > 0))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator · core · conjugator⁻¹``.

    The core is cyclically reduced: its first and last letters are not
    mutually inverse, so it has minimal letter length in the conjugacy
    class of ``w``.
    """
    s = list(w.syllables)
    conj: list[tuple[GenSym, int]] = []
    while len(s) >= 2:
        (g0, e0), (g1, e1) = s[0], s[-1]
        if g0 != g1 or (e0 > 0) == (e1 > 0):
            break
        m = min(abs(e0), abs(e1))
        step = m if e0 > 0 else -m
        conj.append((g0, step))
        e0 -= step
        e1 += step
        s[0] = (g0, e0)
        s[-1] = (g1, e1)
        if not e1:
            s.pop()
        if not e0:
            s.pop(0)
    return reduce(s, w.alphabet), reduce(conj, w.alphabet)


def exponent_sum(w: Word, g: GenSym) -> int:
    return sum(e for h, e in w.syllables if h == g)


def exponent_vector(w: Word) -> list[int]:
    """Exponent sums of every generator of the word's alphabet, in order."""
    v = [0] * len(w.alphabet)
    for g, e in w.syllables:
        v[g.id] += e
    return v


def _minimal_period(seq: Sequence) -> int:
    # prefix function; the minimal period divides len(seq) iff seq is a power
    n = len(seq)
    pi = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = pi[k - 1]
        if seq[i] == seq[k]:
            k += 1
        pi[i] = k
    p = n - pi[-1]
    return p if n % p == 0 else n


def power_root(w: Word) -> tuple[Word, int]:
    """Return ``(root, k)`` with ``w = root^k`` and ``k`` maximal.

    ``w`` must be nonempty and cyclically reduced.  When the first and last
    syllables carry different generators the period can be read off the
    syllable sequence directly; otherwise the letters are expanded (subject
    to :data:`MAX_LETTERS`).
    """
    if w.is_identity:
        raise ValueError("power_root of the identity word is undefined")
    if not is_cyclically_reduced(w):
        raise ValueError(f"power_root needs a cyclically reduced word, got {w}")
    s = w.syllables
    if len(s) == 1:
        g, e = s[0]
        return Word(((g, 1 if e > 0 else -1),), w.alphabet), abs(e)
    if s[0][0] != s[-1][0]:
        p = _minimal_period(s)
        return Word(s[:p], w.alphabet), len(s) // p
    letters = list(w.letters())
    p = _minimal_period(letters)
    return reduce(letters[:p], w.alphabet), len(letters) // p
