import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.fp_groups import FpGroup, low_index_subgroups as sympy_low_index
from sympy.combinatorics.free_groups import free_group

from groupeq.cosets import (Blocks, _standardize, CosetEnumerationIncomplete, CosetTableError, enumerate_low_index,
                            letters, low_index_subgroups, rewrite, schreier_exponent_matrix,
                            schreier_transversal, subgroup_presentation, todd_coxeter)
from groupeq.equations import relator_matrix
from groupeq.groups import Presentation
from groupeq.words import Alphabet, multiply, power, reduce


def test_todd_coxeter_dihedral():
    p = Presentation.of("x, y", "x^2", "y^5", "x y x y")
    assert todd_coxeter(p).index == 10
    x = p.alphabet.gen("x")
    assert todd_coxeter(p, [x]).index == 5


def test_todd_coxeter_cap():
    with pytest.raises(CosetEnumerationIncomplete):
        todd_coxeter(Presentation.of("x, y"), max_cosets=50)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_cyclic_cosets(n):
    p = Presentation.of("x", f"x^{n}")
    t = todd_coxeter(p)
    assert t.index == n
    assert t.permutations() == [tuple((i + 1) % n for i in range(n))] or \
        sorted(t.permutations()[0]) == list(range(n))


def test_verify_rejects_broken_table():
    p = Presentation.of("x", "x^2")
    good = todd_coxeter(p)
    from groupeq.cosets import CosetTable
    bad = CosetTable(p, ((1, 1), (1, 0)))
    with pytest.raises(CosetTableError):
        bad.verify()
    good.verify()


def test_low_index_counts_modular_group():
    # subgroups of PSL(2,Z) = C2 * C3 by index
    p = Presentation.of("x, y", "x^2", "y^3")
    counts = [0] * 7
    for t in low_index_subgroups(p, 6):
        counts[t.index] += 1
    assert counts[1:] == [1, 1, 4, 8, 5, 22]


def test_low_index_counts_free_group():
    # subgroups of F2 of index n: 1, 3, 13, 71
    p = Presentation.of("x, y")
    counts = [0] * 5
    for t in low_index_subgroups(p, 4):
        counts[t.index] += 1
    assert counts[1:] == [1, 3, 13, 71]


@pytest.mark.parametrize("rels", [["x^2", "y^3", "(x y)^3"], ["x^2", "y^2"], ["x y x^-1 y^-1"],
                                  ["x^3", "y^3", "x y x y"]])
def test_low_index_count_matches_sympy(rels):
    alph = Alphabet.of("x, y")
    words = [_expand(r, alph) for r in rels]
    p = Presentation(alph, tuple(words))
    F, x, y = free_group("x, y")
    G = FpGroup(F, [eval(r.replace("^", "**").replace(" ", "*"), {"x": x, "y": y}) for r in rels])
    ours = {t.action for t in low_index_subgroups(p, 4)}
    # sympy lists one subgroup per conjugacy class; restarting a table at
    # each coset gives the conjugates
    theirs = set()
    for ct in sympy_low_index(G, 4):
        rows = [list(r) for r in ct.table]
        theirs |= {_standardize(rows, c) for c in range(len(rows))}
    assert ours == theirs


def _expand(r, alph):
    if r.startswith("("):
        inner, k = r[1:].split(")^")
        return power(alph.parse(inner), int(k))
    return alph.parse(r)


def test_budget_reports_exhausted_branches():
    p = Presentation.of("x, y")
    res = enumerate_low_index(p, 6, budget=50)
    assert not res.complete
    assert res.exhausted


def test_reidemeister_schreier_index_two():
    p = Presentation.of("x, y", "x^2", "y^3", "x y x y x y")
    t = todd_coxeter(p, [p.alphabet.gen("y"), multiply(p.alphabet.gen("x"), p.alphabet.gen("y"))])
    sp = subgroup_presentation(p, t)
    assert len(sp.relators) == t.index * len(p.relators)
    tv = schreier_transversal(t)
    assert len(tv.generators) == t.index * 2 - (t.index - 1)


def test_rewrite_requires_subgroup_element():
    p = Presentation.of("x", "x^4")
    t = todd_coxeter(p, [p.alphabet.parse("x^2")])
    tv = schreier_transversal(t)
    assert not rewrite(p.alphabet.parse("x^2"), t, tv).is_identity
    with pytest.raises(ValueError):
        rewrite(p.alphabet.parse("x"), t, tv)


def test_rewrite_definitions_recover_word():
    p = Presentation.of("x, y", "x^2", "y^3")
    for t in low_index_subgroups(p, 4):
        tv = schreier_transversal(t)
        for t0, g in tv.generators:
            d = tv.definition(t0, g, t)
            assert t.trace(0, d) == 0
            r = rewrite(d, t, tv)
            assert list(r.letters()) == [(tv.y(t0, g), 1)]


@settings(max_examples=40)
@given(st.lists(st.lists(st.sampled_from([0, 1, 2, 3]), min_size=1, max_size=5), max_size=2),
       st.integers(1, 5))
def test_fast_schreier_matrix_matches_rewriting(codes, n):
    alph = Alphabet.of("x, y")
    rels = tuple(reduce([(alph[c // 2], -1 if c & 1 else 1) for c in r], alph) for r in codes)
    p = Presentation(alph, rels)
    for t in low_index_subgroups(p, n):
        sp = subgroup_presentation(p, t)
        assert schreier_exponent_matrix(p, t) == relator_matrix(sp.relators, sp.alphabet)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=40), st.integers(0, 16))
def test_blocks_expand_to_word(word, period):
    b = Blocks(word, period)
    assert b.length == len(word)
    assert [b.letter(i) for i in range(len(word))] == word


def test_compressed_search_matches_plain(monkeypatch):
    import groupeq.cosets as cosets
    rnd = random.Random(7)
    alph = Alphabet.of("x, y")
    for _ in range(12):
        rels = []
        for _ in range(2):
            base = [(alph[rnd.randrange(2)], rnd.choice([-1, 1])) for _ in range(rnd.randint(1, 3))]
            rels.append(power(reduce(base, alph), rnd.randint(1, 12)))
        p = Presentation(alph, tuple(rels))
        fast = enumerate_low_index(p, 4).tables
        monkeypatch.setattr(cosets.Blocks.__init__, "__defaults__", (0,))
        plain = enumerate_low_index(p, 4).tables
        monkeypatch.undo()
        assert fast == plain


def test_letters_codes():
    alph = Alphabet.of("x, y")
    assert letters(alph.parse("x y^-1 x^2")) == [0, 3, 0, 0]


@pytest.mark.parametrize("rels", [(), ("x^2", "y^3"), ("x y x^-1 y^-1",)])
def test_streamed_tables_are_standard_and_complete(rels):
    from groupeq.cosets import iter_low_index
    p = Presentation.of("x, y", *rels)
    streamed = [t.action for t in iter_low_index(p, 4)]
    assert len(set(streamed)) == len(streamed)
    assert all(_standardize([list(r) for r in a]) == a for a in streamed)
    assert sorted(streamed, key=lambda a: (len(a), a)) == [t.action for t in low_index_subgroups(p, 4)]
