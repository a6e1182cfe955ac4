import random

import pytest
from hypothesis import given, settings, strategies as st

from groupeq.groups import FactorSpec, FreeProductSpec, GroupAxiomError, cyclic_group
from groupeq.mixedwords import Const, delete_factor, normalize
from groupeq.parsing import parse
from groupeq.theorems import (ASSERTED, FAILED, VERIFIED, Assertions, NoQuotientSolution, check_bhs,
                              check_freiheitssatz, check_gr, check_main, check_nitsche_thom,
                              nonsingular_cover, orbit_exponent_matrix, orbit_system, syllable_power)
from groupeq.words import Alphabet

from conftest import c2_system, load
from instances import orbit_instances, orbit_symmetric


def statuses(report):
    return [c.status for c in report.checks]


def assert_witnessed(report):
    for c in report.failed():
        assert c.witness is not None, (report.theorem, c.name)


def test_gr_over_finite_factor():
    doc = load("square_root_c2.geq")
    r = check_gr(doc.system)
    assert r.ok and statuses(r) == [VERIFIED, VERIFIED]
    r = check_gr(load("conjugate_c2.geq").system)
    assert not r.ok and r.conclusion is None
    assert r.failed()[0].witness is not None


def test_gr_rejects_infinite_factor():
    doc = parse("group P = free { p }\nvars x;\neq: x p = 1;\n")
    with pytest.raises(ValueError):
        check_gr(doc.system)


def test_presented_factor_needs_assertion():
    doc = parse("group Q = presented < q | q^2 >\nvars x;\neq: x^2 = 1;\n")
    r = check_nitsche_thom(doc.system, doc.assertion_flags(), max_index=2, factor="Q")
    assert r.checks[0].status == FAILED
    doc = parse("group Q = presented < q | q^2 >\nassert Q gr\nvars x;\neq: x^2 = 1;\n")
    r = check_nitsche_thom(doc.system, doc.assertion_flags(), max_index=2, factor="Q")
    assert statuses(r) == [ASSERTED, VERIFIED]
    assert "assuming" in r.conclusion


def test_nitsche_thom_finds_double_cover():
    doc = load("content_xy2z3.geq")
    r = check_nitsche_thom(doc.system, doc.assertion_flags(), max_index=2)
    assert r.ok
    doc = c2_system("x^2 a")
    r = check_nitsche_thom(doc.system, doc.assertion_flags(), max_index=3)
    assert r.ok


def test_nitsche_thom_inconclusive_is_not_false():
    doc = load("conjugate_c2.geq")
    r = check_nitsche_thom(doc.system, doc.assertion_flags(), max_index=3)
    assert not r.ok
    cover = [c for c in r.checks if c.status == FAILED][-1]
    assert "inconclusive" in cover.witness


def test_nonsingular_cover_search():
    from groupeq.groups import Presentation
    whole = nonsingular_cover(Presentation.of("x", "x^2"), 2)
    assert whole.found and whole.index == 1
    torus = nonsingular_cover(Presentation.of("x, y", "x y x^-1 y^-1"), 4)
    assert not torus.found and torus.tables_tried == 1 + 3 + 4 + 7  # sigma(n) subgroups of Z^2


def test_bhs_proper_power():
    doc = load("bhs_free.geq")
    single, conj, square = doc.system.equations
    r = check_bhs(square)
    assert r.ok and r.details["proper_power"] and r.details["k"] == 2
    assert r.details["root"] == "c d"
    r = check_bhs(single)
    assert r.ok and not r.details["proper_power"]
    assert "locally indicable" in r.conclusion
    r = check_bhs(conj)
    assert not r.ok
    assert r.failed()[0].witness["factor"] == "C"


def test_bhs_finite_factor_is_not_locally_indicable():
    doc = parse("group C = free { c }\ngroup K = finite { table = [[0, 1], [1, 0]] }\neq: c K[1] = 1;\n")
    r = check_bhs(doc.system.equations[0])
    assert statuses(r)[:2] == [VERIFIED, FAILED]
    assert_witnessed(r)


def test_freiheitssatz_examples():
    doc = load("freiheitssatz.geq")
    good, conj, twisted = doc.system.equations
    assert check_freiheitssatz(good).ok
    r = check_freiheitssatz(conj)
    assert r.failed()[0].witness == {"image": "identity"}
    r = check_freiheitssatz(twisted)
    w = r.failed()[0].witness
    assert w["factor"] == "C" and w["element"] == "c" and w["conjugator"] == "d"


def test_shape_errors():
    with pytest.raises(ValueError):
        check_bhs(load("freiheitssatz.geq").system.equations[0])
    with pytest.raises(ValueError):
        check_freiheitssatz(load("bhs_free.geq").system.equations[0])


def test_main_theorem_s3():
    doc = load("main_s3.geq")
    eq1, eq2 = doc.system.equations
    a = doc.subgroup("A").elements
    r = check_main(eq1, a, doc.assertion_flags())
    assert statuses(r) == [VERIFIED, FAILED, VERIFIED]
    r = check_main(eq2, a, doc.assertion_flags())
    assert r.failed()[-1].witness == {"image": "identity"}
    whole = doc.subgroup("G").elements
    r = check_main(eq1, whole, doc.assertion_flags(), normal_name="G")
    assert statuses(r)[:2] == [VERIFIED, VERIFIED]


def test_main_theorem_rejects_non_normal():
    doc = load("main_s3.geq")
    g = doc.system.spec.factors[0].group
    swap = g.index("s")
    with pytest.raises(GroupAxiomError):
        check_main(doc.system.equations[0], g.subgroup([swap]))


def test_assertions_validate_flags():
    spec = load("bhs_free.geq").system.spec
    with pytest.raises(ValueError):
        Assertions(spec, {"C": ["nice"]})
    with pytest.raises(KeyError):
        Assertions(spec, {"Z": ["gr"]})
    assert Assertions(spec, {"C": ["locally_indicable"]})["C"].asserted_locally_indicable


def test_syllable_power():
    doc = parse("group C = free { c }\ngroup K = finite { table = [[0, 1, 2], [1, 2, 0], [2, 0, 1]] }\n"
                "eq: c K[1] c K[1] c K[1] = 1;\neq: c K[1] c K[2] = 1;\n")
    a, b = doc.system.equations
    assert syllable_power(a)[1] == 3
    assert syllable_power(b)[1] == 1


def test_orbit_system_klein_four():
    doc = load("orbit_v4.geq")
    orb = orbit_system(doc.system.equations[0], doc.subgroup("A").elements)
    assert orbit_exponent_matrix(orb).matrix.tolist() == [[1, 2], [2, 1]]
    assert [str(w) for w in orb.system.equations] == ["x_0 a x_1^2", "x_1 a x_0^2"]
    assert orb.substitution == {"x": doc.system.spec.factors[0].group.index("b")}


def test_orbit_system_trivial_quotient_is_identity():
    doc = load("orbit_v4.geq")
    w = doc.system.equations[0]
    orb = orbit_system(w, range(4))
    assert orb.system.equations == (w,)


def test_orbit_system_without_quotient_solution():
    doc = parse("group C4 = finite { table = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]] }\n"
                "vars x;\neq: x^2 C4[1] = 1;\n")
    with pytest.raises(NoQuotientSolution):
        orbit_system(doc.system.equations[0], {0, 2})


def test_orbit_symmetry_on_random_instances():
    for _, _, orb in orbit_instances(40, seed=1):
        assert orbit_symmetric(orb)


def test_orbit_identity_equation_when_constants_in_a():
    # constants in A and trivial lift: the identity equation is the rewritten word itself
    for w, a, orb in orbit_instances(30, seed=2):
        if orb.substitution or orb.quotient.order == 1:
            continue
        e = orb.quotient.identity
        for x in {x for (_, x) in orb.variables}:
            total = sum(orb.exponent(e, b, x) for b in range(orb.quotient.order))
            assert total == sum(s.exp for s in w.syllables if hasattr(s, "gen") and s.gen.name == x)


GK = FreeProductSpec((FactorSpec.free("C", "c"), FactorSpec.free("D", "d"),
                      FactorSpec.finite("K", cyclic_group(3))))
C, D = GK.factor("C").group.gen("c"), GK.factor("D").group.gen("d")
piece = st.one_of(st.sampled_from([Const("C", C), Const("C", ~C), Const("D", D), Const("D", ~D)]),
                  st.builds(lambda k: Const("K", k), st.integers(0, 2)))


@settings(max_examples=100)
@given(st.lists(piece, max_size=8))
def test_freiheitssatz_agrees_with_bhs(raw):
    w = normalize(raw, GK)
    fs = check_freiheitssatz(w)
    bhs = check_bhs(delete_factor(w, "K"))
    assert fs.checks[-1].status == bhs.checks[-1].status
    assert fs.checks[-1].witness == bhs.checks[-1].witness
    assert_witnessed(fs)
    assert_witnessed(bhs)


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_failed_checks_carry_witnesses(seed):
    rnd = random.Random(seed)
    doc = load(rnd.choice(["main_s3.geq", "conjugate_c2.geq", "square_root_c2.geq", "two_constants_c3.geq"]))
    sys = doc.system
    reports = [check_gr(sys), check_nitsche_thom(sys, doc.assertion_flags(), max_index=2)]
    for r in reports:
        assert_witnessed(r)
        assert (r.conclusion is None) == bool(r.failed())


def test_finite_factor_assertion_cannot_override_refutation():
    doc = parse("group C = free { c }\ngroup K = finite { table = [[0, 1], [1, 0]] }\n"
                "assert K locally_indicable\neq: c K[1] = 1;\n")
    r = check_bhs(doc.system.equations[0], doc.assertion_flags())
    assert r.checks[1].status == FAILED


def test_asserted_hypotheses_are_echoed():
    doc = parse("group C = free { c }\ngroup D = free { d }\ngroup K = presented < k | k^5 >\n"
                "assert K gr_star\neq: c d = 1;\n")
    r = check_freiheitssatz(doc.system.equations[0], doc.assertion_flags())
    assert r.ok
    asserted = [c.name for c in r.checks if c.status == ASSERTED]
    assert asserted and all(name in r.conclusion for name in asserted)
