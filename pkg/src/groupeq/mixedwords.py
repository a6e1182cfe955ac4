"""Normal forms in free products ``G1 * G2 * ... * F(X)``.

A :class:`MixedWord` is a sequence of syllables, each either a non-identity
constant from one factor or a nonzero power of a variable, with no two
adjacent syllables mergeable.  The content maps of the package all live
here: :func:`content` (delete constants), :func:`delete_factor` and
:func:`quotient_content` (push constants through ``G -> G/A``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .groups import FINITE, FactorSpec, FiniteGroup, FreeProductSpec, quotient
from .words import Alphabet, GenSym, Word, reduce

IDENTITY = "identity"


@dataclass(frozen=True)
class Const:
    factor: str
    element: object  # int index for finite factors, Word for free ones


@dataclass(frozen=True)
class Var:
    gen: GenSym
    exp: int


Syllable = Union[Const, Var]


@dataclass(frozen=True)
class MixedWord:
    syllables: tuple[Syllable, ...]
    spec: FreeProductSpec = field(compare=False)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for s in self.syllables:
            if isinstance(s, Var):
                parts.append(s.gen.name if s.exp == 1 else f"{s.gen.name}^{s.exp}")
            else:
                parts.append(self.spec.factor(s.factor).format(s.element))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MixedWord({str(self)!r})"

    def __len__(self) -> int:
        """Syllable length."""
        return len(self.syllables)

    def __mul__(self, other: "MixedWord") -> "MixedWord":
        if other.spec != self.spec:
            raise ValueError("cannot multiply words over different free products")
        # both sides are reduced, so cancellation only happens at the seam
        a, b = self.syllables, other.syllables
        i, j = len(a), 0
        while i and j < len(b) and _mergeable(a[i - 1], b[j]):
            merged = normalize([a[i - 1], b[j]], self.spec).syllables
            i, j = i - 1, j + 1
            if merged:
                return MixedWord(a[:i] + merged + b[j:], self.spec)
        return MixedWord(a[:i] + b[j:], self.spec)

    def __invert__(self) -> "MixedWord":
        return inverse(self)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def has_variables(self) -> bool:
        return any(isinstance(s, Var) for s in self.syllables)

    def constants(self) -> Iterable[Const]:
        return (s for s in self.syllables if isinstance(s, Const))


def _check(s: Syllable, spec: FreeProductSpec) -> None:
    if isinstance(s, Var):
        if s.gen not in spec.variables:
            raise ValueError(f"variable {s.gen} is not declared")
    elif isinstance(s, Const):
        if not spec.has_factor(s.factor):
            raise ValueError(f"factor {s.factor!r} is not declared")
        spec.factor(s.factor).check_element(s.element)
    else:
        raise TypeError(f"not a syllable: {s!r}")


def normalize(raw: Iterable[Syllable], spec: FreeProductSpec, trusted: bool = False) -> MixedWord:
    """Reduce a syllable sequence to free-product normal form.

    ``trusted`` skips the per-syllable membership checks; use it only for
    syllables taken from words already over ``spec``.
    """
    out: list[Syllable] = []
    for s in raw:
        if not trusted:
            _check(s, spec)
        if isinstance(s, Var):
            if s.exp == 0:
                continue
            if out and isinstance(out[-1], Var) and out[-1].gen == s.gen:
                e = out.pop().exp + s.exp
                if e:
                    out.append(Var(s.gen, e))
            else:
                out.append(s)
        else:
            f = spec.factor(s.factor)
            if f.is_identity(s.element):
                continue
            if out and isinstance(out[-1], Const) and out[-1].factor == s.factor:
                e = f.mul(out.pop().element, s.element)
                if not f.is_identity(e):
                    out.append(Const(s.factor, e))
            else:
                out.append(s)
    return MixedWord(tuple(out), spec)


def _inv_syllable(s: Syllable, spec: FreeProductSpec) -> Syllable:
    if isinstance(s, Var):
        return Var(s.gen, -s.exp)
    return Const(s.factor, spec.factor(s.factor).inv(s.element))


def inverse(w: MixedWord) -> MixedWord:
    return MixedWord(tuple(_inv_syllable(s, w.spec) for s in reversed(w.syllables)), w.spec)


def conjugate(w: MixedWord, by: MixedWord) -> MixedWord:
    """``by · w · by⁻¹``."""
    return normalize(by.syllables + w.syllables + inverse(by).syllables, w.spec)


def variable_word(w: Word, spec: FreeProductSpec) -> MixedWord:
    """Embed a word over ``spec.variables`` as a mixed word."""
    return normalize([Var(g, e) for g, e in w.syllables], spec)


def content(w: MixedWord) -> Word:
    """Delete all constants and freely reduce what is left."""
    return reduce(((s.gen, s.exp) for s in w.syllables if isinstance(s, Var)), w.spec.variables)


def delete_factor(w: MixedWord, name: str) -> MixedWord:
    """Image under the retraction killing the factor ``name``."""
    spec = w.spec.without(name)
    return normalize((s for s in w.syllables if not (isinstance(s, Const) and s.factor == name)),
                     spec)


def _finite_factor(spec: FreeProductSpec, name: str | None) -> FactorSpec:
    if name is not None:
        f = spec.factor(name)
        if not f.is_finite:
            raise ValueError(f"factor {name!r} is not finite")
        return f
    finite = [f for f in spec.factors if f.is_finite]
    if len(finite) != 1:
        raise ValueError(f"expected exactly one finite factor, found {len(finite)}; name one")
    return finite[0]


def quotient_content(w: MixedWord, normal: Iterable[int], factor: str | None = None,
                     quotient_name: str | None = None) -> MixedWord:
    """Push every constant of a finite factor ``G`` through ``G -> G/A``.

    The result lives over the spec with ``G`` replaced by the quotient
    factor (named ``quotient_name``, default ``"G/A"`` built from ``G``'s
    name).  Raises :class:`~groupeq.groups.GroupAxiomError` if ``normal`` is
    not a normal subgroup.
    """
    f = _finite_factor(w.spec, factor)
    q, proj = quotient(f.group, normal, name=quotient_name or f"{f.name}/A")
    qf = FactorSpec(quotient_name or f"{f.name}/A", FINITE, q)
    spec = w.spec.replace(f.name, qf)
    raw = [Const(qf.name, proj[s.element]) if isinstance(s, Const) and s.factor == f.name else s
           for s in w.syllables]
    return normalize(raw, spec)


def _mergeable(a: Syllable, b: Syllable) -> bool:
    if isinstance(a, Var) and isinstance(b, Var):
        return a.gen == b.gen
    if isinstance(a, Const) and isinstance(b, Const):
        return a.factor == b.factor
    return False


def cyclic_normal_form(w: MixedWord) -> tuple[MixedWord, MixedWord]:
    """Return ``(core, conjugator)`` with ``w = conjugator · core · conjugator⁻¹``.

    The core is cyclically reduced in the free-product sense: when it has
    two or more syllables its first and last syllables are not in the same
    factor (or powers of the same variable).
    """
    spec = w.spec
    s = list(w.syllables)
    conj: list[Syllable] = []
    while len(s) >= 2 and _mergeable(s[0], s[-1]):
        # w = a M b = a (M b a) a^-1
        first = s[0]
        conj.append(first)
        merged = normalize([s[-1], first], spec).syllables
        s = s[1:-1] + list(merged)
    return normalize(s, spec), normalize(conj, spec)


def conjugate_into_factor(w: MixedWord) -> str | None:
    """Factor name if ``w`` is conjugate into one factor, :data:`IDENTITY` if
    ``w`` is trivial, ``None`` otherwise.
    """
    core, _ = cyclic_normal_form(w)
    if core.is_identity:
        return IDENTITY
    if len(core) == 1 and isinstance(core.syllables[0], Const):
        return core.syllables[0].factor
    return None


@dataclass(frozen=True)
class EquationSystem:
    """Equations ``w = 1`` over a common free-product spec."""

    spec: FreeProductSpec
    equations: tuple[MixedWord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        for w in self.equations:
            if w.spec != self.spec:
                raise ValueError("all equations must share the system's spec")

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def contents(self) -> list[Word]:
        return [content(w) for w in self.equations]

    def constant_factors(self) -> list[str]:
        """Names of factors whose constants occur, in spec order."""
        used = {c.factor for w in self.equations for c in w.constants()}
        return [f.name for f in self.spec.factors if f.name in used]


def const(spec: FreeProductSpec, factor: str, element) -> Const:
    """Convenience: a constant given by label (finite) or letter string (free)."""
    f = spec.factor(factor)
    if isinstance(element, str):
        if f.kind == FINITE:
            element = f.group.index(element)
        elif isinstance(f.group, Alphabet):
            element = f.group.parse(element)
    return Const(factor, element)
