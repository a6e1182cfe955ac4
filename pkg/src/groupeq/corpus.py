"""Small test corpora.

:func:`small_presentations` enumerates every presentation with a bounded
number of generators, relators and relator length, up to the obvious
symmetries: cyclic rotation and inversion of each relator, reordering of
relators, and signed permutations of the generators.  None of these change
the standard complex up to isomorphism.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .groups import Presentation
from .words import Alphabet, reduce

_GEN_NAMES = "xyzuvw"


def _cyclic_words(ngens: int, length: int) -> Iterator[tuple[int, ...]]:
    """Cyclically reduced letter sequences (column codes) of exact length."""
    ncols = 2 * ngens

    def extend(prefix):
        if len(prefix) == length:
            if length < 2 or prefix[0] != prefix[-1] ^ 1:
                yield tuple(prefix)
            return
        for c in range(ncols):
            if prefix and c == prefix[-1] ^ 1:
                continue
            prefix.append(c)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def _canonical_relator(w: tuple[int, ...]) -> tuple[int, ...]:
    inv = tuple(c ^ 1 for c in reversed(w))
    return min(v[i:] + v[:i] for v in (w, inv) for i in range(len(v)))


def _signed_perms(ngens: int):
    for perm in itertools.permutations(range(ngens)):
        for flips in itertools.product((0, 1), repeat=ngens):
            yield [2 * perm[c // 2] + ((c & 1) ^ flips[c // 2]) for c in range(2 * ngens)]


def _canonical_presentation(ngens: int, rels: tuple[tuple[int, ...], ...]):
    best = None
    for sigma in _signed_perms(ngens):
        img = tuple(sorted(_canonical_relator(tuple(sigma[c] for c in r)) for r in rels))
        if best is None or img < best:
            best = img
    return best


def small_presentations(max_gens: int = 2, max_relators: int = 2,
                        max_length: int = 6) -> list[Presentation]:
    """Deduplicated presentations on ``1..max_gens`` generators with
    ``0..max_relators`` cyclically reduced relators of letter length
    ``1..max_length``, in a deterministic order.
    """
    out = []
    for ngens in range(1, max_gens + 1):
        words = sorted({_canonical_relator(w)
                        for L in range(1, max_length + 1) for w in _cyclic_words(ngens, L)},
                       key=lambda w: (len(w), w))
        seen = set()
        for k in range(max_relators + 1):
            for rels in itertools.combinations_with_replacement(words, k):
                key = _canonical_presentation(ngens, rels)
                if key in seen:
                    continue
                seen.add(key)
                alph = Alphabet(_GEN_NAMES[:ngens])
                words_ = tuple(reduce([(alph[c // 2], -1 if c & 1 else 1) for c in r], alph)
                               for r in key)
                out.append(Presentation(alph, words_))
    return out
