import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from groupeq.groups import (FactorSpec, FreeProductSpec, GroupAxiomError, Presentation,
                            check_normal_subgroup, cyclic_group, direct_product, from_permutations,
                            normal_closure, quotient, symmetric_group, validate_table)


def test_cyclic_table_is_addition():
    g = cyclic_group(5)
    assert g.order == 5
    gen = g.generating_set()[0]
    assert g.element_order(gen) == 5
    assert g.pow(gen, 5) == g.identity
    assert g.pow(gen, -1) == g.inv(gen)


def test_symmetric_group_orders():
    assert [symmetric_group(m).order for m in range(1, 6)] == [1, 2, 6, 24, 120]


@pytest.mark.parametrize("table,axiom", [
    ([[0, 1], [1]], "shape"),
    ([[0, 2], [1, 0]], "closure"),
    ([[1, 1], [0, 0]], "identity"),
    ([[0, 1, 2], [1, 1, 1], [2, 1, 0]], "inverse"),
    # latin square with identity 0 that is not associative
    ([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]],
     "associativity"),
])
def test_axiom_violations_are_named(table, axiom):
    with pytest.raises(GroupAxiomError) as err:
        validate_table(table)
    assert err.value.axiom == axiom


def test_labels_must_match_order():
    with pytest.raises(GroupAxiomError):
        validate_table([[0, 1], [1, 0]], labels=["e"])


def test_permutation_closure_products_act_on_the_right():
    s = (1, 0, 2)
    r = (1, 2, 0)
    g = from_permutations([s, r], labels={0: "s", 1: "r"})
    assert g.order == 6
    i_s, i_r = g.index("s"), g.index("r")
    sr = g.perms[g.mul(i_s, i_r)]
    assert sr == tuple(r[s[i]] for i in range(3))
    validate_table(g.table)


def test_quotient_and_normality():
    g = symmetric_group(3)
    rot = next(a for a in range(6) if g.element_order(a) == 3)
    a3 = g.subgroup([rot])
    q, proj = quotient(g, a3)
    assert q.order == 2
    assert all(proj[g.mul(x, y)] == q.mul(proj[x], proj[y]) for x in range(6) for y in range(6))
    swap = next(a for a in range(6) if g.element_order(a) == 2)
    with pytest.raises(GroupAxiomError) as err:
        check_normal_subgroup(g, g.subgroup([swap]))
    assert err.value.axiom == "normality"
    assert normal_closure(g, [swap]) == frozenset(range(6))


def test_direct_product_is_componentwise():
    g, h = cyclic_group(2), cyclic_group(3)
    p = direct_product(g, h)
    for (a, b), (c, d) in itertools.product(itertools.product(range(2), range(3)), repeat=2):
        assert p.mul(a * 3 + b, c * 3 + d) == g.mul(a, c) * 3 + h.mul(b, d)
    validate_table(p.table)


def test_restrict_gives_subgroup_table():
    g = symmetric_group(4)
    a4 = normal_closure(g, [a for a in range(24) if g.element_order(a) == 3])
    sub, incl = g.restrict(a4, name="A4")
    assert sub.order == 12
    validate_table(sub.table)
    assert all(incl[sub.mul(x, y)] == g.mul(incl[x], incl[y]) for x in range(12) for y in range(12))


@given(st.lists(st.permutations(range(5)), min_size=1, max_size=3))
def test_permutation_closures_are_groups(perms):
    g = from_permutations(perms)
    validate_table(g.table)
    assert 120 % g.order == 0
    assert np.all(g.table[np.arange(g.order), g.inverses] == g.identity)


def test_presentation_relators_share_alphabet():
    p = Presentation.of("x, y", "x^2", "y^3")
    assert str(p) == "< x, y | x^2, y^3 >"
    with pytest.raises(ValueError):
        Presentation(p.alphabet, (Presentation.of("z", "z").relators[0],))


def test_free_product_spec_names():
    c2 = FactorSpec.finite("C2", cyclic_group(2))
    free = FactorSpec.free("F", "u, v")
    spec = FreeProductSpec((c2, free))
    assert spec.factor("F").kind == "free"
    with pytest.raises(ValueError):
        FreeProductSpec((c2, c2))
    presented = FactorSpec.presented("P", Presentation.of("p", "p^3"))
    with pytest.raises(TypeError):
        presented.mul(0, 0)
