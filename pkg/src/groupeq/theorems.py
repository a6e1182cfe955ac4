"""Hypothesis checkers and the orbit-system reduction.

Each checker returns a :class:`HypothesisReport`.  A check is ``verified``
when the package decided it, ``asserted`` when it rests on a user flag,
and ``failed`` otherwise.  Local indicability and GR/GR*-membership are
not decidable from the inputs, so they are only ever asserted, with two
exceptions that follow from definitions: a nontrivial finite group is not
locally indicable (it has no epimorphism onto Z), and a finite group is
GR and GR* (finite groups are hyperlinear).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cosets import enumerate_low_index, schreier_exponent_matrix
from .equations import ExponentMatrix, dependency, exponent_matrix, is_nonsingular, relator_matrix
from .groups import FINITE, FREE, FactorSpec, FiniteGroup, FreeProductSpec, Presentation, \
    check_normal_subgroup, quotient
from .mixedwords import IDENTITY, Const, EquationSystem, MixedWord, Var, content, \
    conjugate_into_factor, cyclic_normal_form, delete_factor, normalize, quotient_content
from .words import Alphabet, Word, power_root, reduce
from .zlinalg import rows_independent

VERIFIED, ASSERTED, FAILED = "verified", "asserted", "failed"

FLAGS = ("locally_indicable", "gr", "gr_star", "hyperlinear")


@dataclass(frozen=True)
class FactorAssertions:
    is_finite: bool = False
    asserted_gr: bool = False
    asserted_gr_star: bool = False
    asserted_locally_indicable: bool = False
    asserted_hyperlinear: bool = False


class Assertions:
    """Per-factor flags.  ``is_finite`` comes from the spec, never from the user."""

    def __init__(self, spec: FreeProductSpec, flags: Mapping[str, Iterable[str]] | None = None):
        flags = {k: set(v) for k, v in (flags or {}).items()}
        for name, fs in flags.items():
            spec.factor(name)
            unknown = fs - set(FLAGS)
            if unknown:
                raise ValueError(f"unknown assertion(s) {sorted(unknown)} for {name}")
        self.factors = {
            f.name: FactorAssertions(
                is_finite=f.is_finite,
                asserted_gr="gr" in flags.get(f.name, ()),
                asserted_gr_star="gr_star" in flags.get(f.name, ()),
                asserted_locally_indicable="locally_indicable" in flags.get(f.name, ()),
                asserted_hyperlinear="hyperlinear" in flags.get(f.name, ()),
            )
            for f in spec.factors
        }

    def __getitem__(self, name: str) -> FactorAssertions:
        return self.factors.get(name, FactorAssertions())


@dataclass
class Check:
    name: str
    status: str
    witness: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class HypothesisReport:
    theorem: str
    checks: list[Check]
    consequence: str
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status in (VERIFIED, ASSERTED) for c in self.checks)

    @property
    def conclusion(self) -> str | None:
        if not self.ok:
            return None
        asserted = [c.name for c in self.checks if c.status == ASSERTED]
        if asserted:
            return f"{self.consequence} [assuming: {'; '.join(asserted)}]"
        return self.consequence

    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAILED]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "checks": [c.to_dict() for c in self.checks],
            "conclusion": self.conclusion,
            "notes": list(self.notes),
            "details": _jsonable(self.details),
        }

    def __str__(self) -> str:
        lines = [f"{self.theorem}:"]
        for c in self.checks:
            w = f"  ({c.witness})" if c.witness is not None else ""
            lines.append(f"  [{c.status:>8}] {c.name}{w}")
        lines.append(f"  conclusion: {self.conclusion or '(withheld)'}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _short(text: str, limit: int = 240) -> str:
    if len(text) <= limit:
        return text
    return f"{text[:limit]}... ({len(text)} characters)"


def _locally_indicable(f: FactorSpec, asr: Assertions) -> Check:
    name = f"{f.name} locally indicable"
    if f.is_finite:
        if f.group.order == 1:
            return Check(name, VERIFIED, "trivial group")
        return Check(name, FAILED, f"nontrivial finite group of order {f.group.order} "
                                   "has no epimorphism onto Z")
    if f.kind == FREE:
        return Check(name, VERIFIED, "free group")
    if asr[f.name].asserted_locally_indicable:
        return Check(name, ASSERTED, "user assertion")
    return Check(name, FAILED, "not asserted")


def _gr(f: FactorSpec | None, asr: Assertions, star: bool = False) -> Check:
    label = "GR*" if star else "GR"
    if f is None:
        return Check(f"trivial group is {label}", VERIFIED, "trivial group is finite")
    name = f"{f.name} is a {label}-group"
    if f.is_finite:
        return Check(name, VERIFIED, f"finite of order {f.group.order}")
    if f.kind == FREE:
        return Check(name, VERIFIED, "free groups are residually finite, hence hyperlinear")
    a = asr[f.name]
    if a.asserted_hyperlinear:
        return Check(name, ASSERTED, "asserted hyperlinear")
    if a.asserted_gr_star or (not star and a.asserted_gr):
        return Check(name, ASSERTED, f"asserted {'gr_star' if a.asserted_gr_star else 'gr'}")
    return Check(name, FAILED, "not asserted")


def _single_factor(sys_spec: FreeProductSpec, used: list[str], factor: str | None) -> FactorSpec | None:
    if factor is not None:
        return sys_spec.factor(factor)
    if len(used) > 1:
        raise ValueError(f"constants from several factors {used}; the equations must be over one group")
    if used:
        return sys_spec.factor(used[0])
    finite = [f for f in sys_spec.factors if f.is_finite]
    if len(finite) == 1:
        return finite[0]
    return None


def _nonsingular_check(sys: EquationSystem) -> Check:
    em = exponent_matrix(sys)
    dep = dependency(sys)
    if dep is None:
        return Check("system nonsingular", VERIFIED, {"exponent_matrix": em.matrix.tolist()})
    return Check("system nonsingular", FAILED,
                 {"exponent_matrix": em.matrix.tolist(), "vanishing_row_combination": dep})


def check_gr(sys: EquationSystem, factor: str | None = None) -> HypothesisReport:
    """Gerstenhaber–Rothaus: a nonsingular system over a finite group is solvable over it."""
    g = _single_factor(sys.spec, sys.constant_factors(), factor)
    if g is not None and not g.is_finite:
        raise ValueError(f"factor {g.name} is not finite")
    fin = Check(f"{g.name} finite" if g else "constants from the trivial group", VERIFIED,
                f"order {g.group.order}" if g else "no constants")
    return HypothesisReport(
        "Gerstenhaber-Rothaus",
        [fin, _nonsingular_check(sys)],
        f"the system is solvable over {g.name if g else 'the trivial group'}",
    )


@dataclass
class CoverSearch:
    found: bool
    index: int | None
    table: tuple | None
    exhausted_branches: list[int]
    max_index: int
    tables_tried: int


def nonsingular_cover(pres: Presentation, max_index: int, budget: int | None = None) -> CoverSearch:
    """Search subgroups of index <= ``max_index`` for one whose Schreier
    relators form a nonsingular system.  The whole group is tried first,
    before any enumeration."""
    if rows_independent(relator_matrix(pres.relators, pres.alphabet)):
        whole = ((0,) * (2 * len(pres.alphabet)),)
        return CoverSearch(True, 1, whole, [], max_index, 1)
    res = enumerate_low_index(pres, max_index, budget)
    for k, t in enumerate(res.tables):
        if rows_independent(schreier_exponent_matrix(pres, t)):
            return CoverSearch(True, t.index, t.action, res.exhausted, max_index, k + 1)
    return CoverSearch(False, None, None, res.exhausted, max_index, len(res.tables))


def check_nitsche_thom(sys: EquationSystem, assertions: Assertions | None = None,
                       max_index: int = 6, budget: int | None = None,
                       factor: str | None = None) -> HypothesisReport:
    """Nitsche–Thom in group-theoretic form: search for a subgroup of
    ``<X | content(W)>`` with a nonsingular Schreier presentation.

    Not finding one within ``max_index`` is inconclusive, and is reported
    as a failed check at that budget, never as a refutation.
    """
    asr = assertions or Assertions(sys.spec)
    g = _single_factor(sys.spec, sys.constant_factors(), factor)
    q = Presentation(sys.spec.variables, tuple(sys.contents()))
    search = nonsingular_cover(q, max_index, budget)
    if search.found:
        cover = Check("some subgroup of <X | content(W)> has nonsingular Schreier relators",
                      VERIFIED, {"index": search.index, "coset_table": search.table})
    else:
        extra = f"; budget exhausted on branches {search.exhausted_branches}" \
            if search.exhausted_branches else ""
        cover = Check("some subgroup of <X | content(W)> has nonsingular Schreier relators",
                      FAILED, f"not found up to index {max_index} (inconclusive){extra}")
    notes = [f"content presentation: {_short(str(q))}"]
    if not search.found:
        # transfer: H2(K; Q) injects into H2 of every finite cover of K
        notes.append("the whole group is singular, so no finite-index subgroup can be "
                     "nonsingular; only an infinite-index subgroup could satisfy the criterion")
    if len(sys) == 1:
        c = content(sys.equations[0])
        if not c.is_identity:
            notes.append(f"single equation with nontrivial content {c}: the single-equation "
                         "form applies over any finite (or hyperlinear) group")
    return HypothesisReport("Nitsche-Thom", [_gr(g, asr), cover],
                            f"the system is solvable over {g.name if g else 'the trivial group'}",
                            notes)


def _not_conjugate_check(w: MixedWord, label: str) -> Check:
    where = conjugate_into_factor(w)
    name = f"{label} not conjugate into a factor"
    if where is None:
        return Check(name, VERIFIED, None)
    core, conj = cyclic_normal_form(w)
    if where == IDENTITY:
        return Check(name, FAILED, {"image": "identity"})
    return Check(name, FAILED, {"factor": where, "element": str(core), "conjugator": str(conj)})


def syllable_power(w: MixedWord) -> tuple[MixedWord, int]:
    """Root and exponent of the cyclic core, treating each distinct syllable as a letter."""
    core, _ = cyclic_normal_form(w)
    if core.is_identity:
        raise ValueError("identity has no root")
    codes: dict = {}
    for s in core.syllables:
        codes.setdefault(s, str(len(codes)))
    alph = Alphabet(codes.values())
    enc = reduce([(alph[codes[s]], 1) for s in core.syllables], alph)
    root, k = power_root(enc)
    return MixedWord(core.syllables[:len(root)], core.spec), k


def _shape(spec: FreeProductSpec, nfactors: int, what: str) -> None:
    if len(spec.factors) != nfactors or len(spec.variables):
        raise ValueError(f"{what} needs exactly {nfactors} factors and no variables; got "
                         f"{len(spec.factors)} factors and {len(spec.variables)} variables")


def check_bhs(w: MixedWord, assertions: Assertions | None = None) -> HypothesisReport:
    """Brodskii–Howie–Short for ``w`` in ``C * D``."""
    _shape(w.spec, 2, "check_bhs")
    asr = assertions or Assertions(w.spec)
    c, d = w.spec.factors
    checks = [_locally_indicable(c, asr), _locally_indicable(d, asr),
              _not_conjugate_check(w, "w")]
    consequence = f"the natural maps {c.name} -> ({c.name}*{d.name})/<<w>> <- {d.name} are injective"
    notes = []
    details = {}
    if checks[2].status == VERIFIED:
        root, k = syllable_power(w)
        details["proper_power"] = k > 1
        details["root"] = str(root)
        details["k"] = k
        if k == 1:
            consequence += f", and ({c.name}*{d.name})/<<w>> is locally indicable"
        else:
            notes.append(f"w is conjugate to ({root})^{k}, a proper power; local indicability "
                         "of the quotient is not claimed")
    return HypothesisReport("Brodskii-Howie-Short", checks, consequence, notes, details)


def check_freiheitssatz(w: MixedWord, assertions: Assertions | None = None,
                        k_factor: str | None = None) -> HypothesisReport:
    """Freiheitssatz for ``w`` in ``C * D * K`` (``K`` is the third factor unless named)."""
    _shape(w.spec, 3, "check_freiheitssatz")
    asr = assertions or Assertions(w.spec)
    k = w.spec.factor(k_factor) if k_factor else w.spec.factors[2]
    c, d = [f for f in w.spec.factors if f.name != k.name]
    image = delete_factor(w, k.name)
    checks = [_locally_indicable(c, asr), _locally_indicable(d, asr), _gr(k, asr, star=True),
              _not_conjugate_check(image, f"image in {c.name}*{d.name}")]
    return HypothesisReport(
        "Freiheitssatz",
        checks,
        f"the natural maps {c.name}*{k.name} -> ({c.name}*{d.name}*{k.name})/<<w>> <- "
        f"{d.name}*{k.name} are injective",
        [f"image of w in {c.name}*{d.name}: {image}"],
    )


def check_main(w: MixedWord, normal: Iterable[int], assertions: Assertions | None = None,
               factor: str | None = None, normal_name: str = "A") -> HypothesisReport:
    """Main theorem for a finite ``G`` with normal subgroup ``A``."""
    spec = w.spec
    g = _single_factor(spec, sorted({c.factor for c in w.constants()}), factor)
    if g is None or not g.is_finite:
        raise ValueError("check_main needs a finite factor G")
    a = check_normal_subgroup(g.group, normal)
    q, _ = quotient(g.group, a)
    qname = f"{g.name}/{normal_name}"
    checks = [Check(f"{normal_name} is a GR-group", VERIFIED, f"finite of order {len(a)}")]
    if q.order == 1:
        checks.append(Check(f"{qname} locally indicable", VERIFIED, "trivial group"))
    else:
        checks.append(Check(f"{qname} locally indicable", FAILED,
                            f"nontrivial finite group of order {q.order} has no epimorphism onto Z"))
    image = quotient_content(w, a, g.name, qname)
    checks.append(_not_conjugate_check(image, f"{qname}-content"))
    return HypothesisReport("Main theorem", checks,
                            f"the equation is solvable over {g.name}",
                            [f"{qname}-content: {image}"])


class NoQuotientSolution(ValueError):
    """The quotient equation has no solution in ``G/A`` itself."""


@dataclass
class OrbitSystem:
    """Equations over ``A`` (one per element of ``B = G/A``) in unknowns ``(b, x)``."""

    system: EquationSystem
    quotient: FiniteGroup
    projection: list[int]
    lift: list[int]
    variables: dict[tuple[int, str], str]
    substitution: dict[str, int]
    rewritten: MixedWord

    def exponent(self, eq: int, b: int, x: str) -> int:
        """Exponent sum of variable ``(b, x)`` in the equation for ``b = eq``."""
        gen = self.system.spec.variables[self.variables[(b, x)]]
        return sum(s.exp for s in self.system.equations[eq].syllables
                   if isinstance(s, Var) and s.gen == gen)


def _solve_in_quotient(w: MixedWord, fname: str, q: FiniteGroup, proj: list[int]):
    xs = list(w.spec.variables)
    for vals in itertools.product(range(q.order), repeat=len(xs)):
        assign = dict(zip(xs, vals))
        r = q.identity
        for s in w.syllables:
            if isinstance(s, Var):
                r = q.mul(r, q.pow(assign[s.gen], s.exp))
            else:
                r = q.mul(r, proj[s.element])
        if r == q.identity:
            return assign
    return None


def orbit_system(w: MixedWord, normal: Iterable[int], factor: str | None = None) -> OrbitSystem:
    """Rewrite ``w`` over ``G * F(X)`` as the system ``{b ∘ w = 1 : b ∈ G/A}`` over ``A``.

    If the constants of ``w`` do not multiply into ``A``, a solution of the
    quotient equation in ``G/A`` is found by exhaustive search and each
    ``x`` is replaced by ``x·s(x̂)`` first, ``s`` picking the least-index
    preimage.  The equation for ``b`` is the rewriting of ``s(b) w s(b)⁻¹``
    as a word in ``A`` and the conjugates ``X[b,x] = s(b) x s(b)⁻¹``.
    """
    spec = w.spec
    g_spec = _single_factor(spec, sorted({c.factor for c in w.constants()}), factor)
    if g_spec is None or not g_spec.is_finite:
        raise ValueError("orbit_system needs a finite factor G")
    G = g_spec.group
    a = check_normal_subgroup(G, normal)
    B, proj = quotient(G, a)
    lift = [min(x for x in range(G.order) if proj[x] == b) for b in range(B.order)]
    lift[proj[G.identity]] = G.identity
    fname = g_spec.name

    # change of variables
    img = B.product(proj[s.element] for s in w.constants() if s.factor == fname)
    subst: dict[str, int] = {}
    if img != B.identity:
        sol = _solve_in_quotient(w, fname, B, proj)
        if sol is None:
            raise NoQuotientSolution("the G/A-content has no solution in G/A; the reduction "
                                     "would need a locally indicable overgroup")
        raw = []
        for s in w.syllables:
            if isinstance(s, Var):
                shift = lift[sol[s.gen]]
                unit = [Var(s.gen, 1), Const(fname, shift)] if s.exp > 0 else \
                    [Const(fname, G.inv(shift)), Var(s.gen, -1)]
                raw += unit * abs(s.exp)
            else:
                raw.append(s)
        w = normalize(raw, spec)
        subst = {x.name: lift[v] for x, v in sol.items()}

    # subgroup A as its own finite factor
    A_group, incl = G.restrict(a, name=f"{fname}_A")
    pos = {e: i for i, e in enumerate(incl)}
    a_name = f"{fname}_A" if not spec.has_factor(f"{fname}_A") else f"{fname}_A_"
    a_factor = FactorSpec(a_name, FINITE, A_group)

    xs = list(spec.variables)
    if B.order == 1:
        names = {(0, x.name): x.name for x in xs}
    else:
        names = {(b, x.name): f"{x.name}_{b}" for b in range(B.order) for x in xs}
    new_vars = Alphabet(names[(b, x.name)] for b in range(B.order) for x in xs)
    new_spec = FreeProductSpec((a_factor,), new_vars)

    def rewrite_conjugate(b: int) -> MixedWord:
        sb = lift[b]
        word = normalize([Const(fname, sb)] + list(w.syllables) + [Const(fname, G.inv(sb))], spec)
        out = []
        prefix = G.identity
        for s in word.syllables:
            if isinstance(s, Const):
                prefix = G.mul(prefix, s.element)
                continue
            beta = proj[prefix]
            c = G.mul(prefix, G.inv(lift[beta]))  # in A
            var = new_vars[names[(beta, s.gen.name)]]
            out += [Const(a_name, pos[c]), Var(var, s.exp), Const(a_name, pos[G.inv(c)])]
        if prefix not in pos:
            raise AssertionError("constants do not multiply into A after the change of variables")
        out.append(Const(a_name, pos[prefix]))
        return normalize(out, new_spec)

    if B.order == 1:
        return OrbitSystem(EquationSystem(spec, (w,)), B, proj, lift, names, subst, w)
    eqs = tuple(rewrite_conjugate(b) for b in range(B.order))
    return OrbitSystem(EquationSystem(new_spec, eqs), B, proj, lift, names, subst, w)


def orbit_exponent_matrix(orb: OrbitSystem) -> ExponentMatrix:
    return exponent_matrix(orb.system)
