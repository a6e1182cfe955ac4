from hypothesis import given, settings, strategies as st

from groupeq.complexes import (boundaries, covering_complex, criterion_check, h2_trivial, homology,
                               standard_complex)
from groupeq.corpus import small_presentations
from groupeq.cosets import low_index_subgroups, todd_coxeter
from groupeq.groups import Presentation
from groupeq.words import Alphabet, reduce

RP2 = Presentation.of("x", "x^2")
TORUS = Presentation.of("x, y", "x y x^-1 y^-1")
KLEIN = Presentation.of("x, y", "x y x^-1 y")


def test_projective_plane():
    h = homology(standard_complex(RP2))
    assert (h.b0, h.h1(), h.b2) == (1, "Z/2", 0)


def test_sphere_double_cover():
    cover = covering_complex(RP2, todd_coxeter(RP2))
    h = homology(cover)
    assert (h.b0, h.h1(), h.b2) == (1, "0", 1)
    assert cover.euler_characteristic == 2


def test_torus():
    h = homology(standard_complex(TORUS))
    assert (h.h1(), h.b2) == ("Z^2", 1)


def test_klein_bottle():
    h = homology(standard_complex(KLEIN))
    assert (h.h1_torsion, h.b1, h.b2) == ((2,), 1, 0)


def test_trivial_group_disc():
    h = homology(standard_complex(Presentation.of("x", "x")))
    assert (h.h1(), h.b2) == ("0", 0)


def test_torus_covers_are_tori():
    for t in low_index_subgroups(TORUS, 4):
        h = homology(covering_complex(TORUS, t))
        assert (h.b0, h.h1(), h.b2) == (1, "Z^2", 1)


def test_boundary_composition_vanishes():
    for p in (RP2, TORUS, KLEIN):
        for t in low_index_subgroups(p, 3):
            bd = boundaries(covering_complex(p, t))
            assert (bd.d2 @ bd.d1).is_zero()


def test_cover_sizes():
    p = Presentation.of("x, y", "x^2", "y^3")
    for t in low_index_subgroups(p, 4):
        k = covering_complex(p, t)
        assert k.sizes == (t.index, 2 * t.index, 2 * t.index)


def test_criterion_on_small_corpus():
    corpus = small_presentations(2, 1, 4)
    cases = 0
    for p in corpus:
        for t in low_index_subgroups(p, 4):
            rep = criterion_check(p, t)
            assert rep.agree, (str(p), t.action)
            cases += 1
    assert cases == 321


@settings(max_examples=40)
@given(st.lists(st.lists(st.sampled_from([0, 1, 2, 3]), min_size=1, max_size=6), min_size=1, max_size=2),
       st.integers(1, 4))
def test_euler_characteristic_multiplies(codes, n):
    alph = Alphabet.of("x, y")
    rels = tuple(reduce([(alph[c // 2], -1 if c & 1 else 1) for c in r], alph) for r in codes)
    p = Presentation(alph, rels)
    base = standard_complex(p).euler_characteristic
    for t in low_index_subgroups(p, n):
        k = covering_complex(p, t)
        assert k.euler_characteristic == t.index * base
        assert h2_trivial(k) == (homology(k).b2 == 0)


def test_corpus_is_deduplicated():
    corpus = small_presentations(1, 1, 3)
    keys = [(len(p.alphabet), tuple(sorted(str(r) for r in p.relators))) for p in corpus]
    assert len(set(keys)) == len(keys)
    # x and x^-1 are the same relator up to inversion
    assert sum(1 for p in corpus if len(p.relators) == 1 and len(p.relators[0]) == 1) == 1


def test_finite_covers_never_beat_the_base():
    # rational H2 of the base injects into H2 of any finite cover
    for p in small_presentations(2, 2, 4):
        base = h2_trivial(standard_complex(p))
        if base:
            continue
        for t in low_index_subgroups(p, 3):
            assert not h2_trivial(covering_complex(p, t)), (str(p), t.action)
