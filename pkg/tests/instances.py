"""Random finite instances shared by the theorem and acceptance tests."""

import itertools
import random

from groupeq.groups import (FactorSpec, FreeProductSpec, cyclic_group, direct_product, from_permutations,
                            normal_closure)
from groupeq.mixedwords import Const, Var, normalize
from groupeq.theorems import NoQuotientSolution, orbit_system
from groupeq.words import Alphabet


def small_groups():
    c2, c3 = cyclic_group(2), cyclic_group(3)
    return [
        direct_product(c2, c2, name="V4"),
        cyclic_group(4),
        cyclic_group(6),
        from_permutations([(1, 0, 2), (1, 2, 0)], name="S3"),
        from_permutations([(1, 2, 3, 0), (3, 2, 1, 0)], name="D8"),
        from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4"),
        direct_product(c3, c3, name="C3xC3"),
    ]


def normal_subgroups(g):
    found = set()
    for k in (1, 2):
        for gens in itertools.combinations(range(g.order), k):
            found.add(normal_closure(g, gens))
    found.add(frozenset([g.identity]))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def random_word(rnd, spec, fname, order, length):
    xs = list(spec.variables)
    raw = []
    for _ in range(length):
        if rnd.random() < 0.5:
            raw.append(Const(fname, rnd.randrange(order)))
        else:
            raw.append(Var(rnd.choice(xs), rnd.choice([-2, -1, 1, 1, 2])))
    return normalize(raw, spec)


def orbit_instances(count, seed=0, max_quotient=4):
    """``count`` pairs (word, normal subgroup, orbit system) with ``|G/A| <= max_quotient``."""
    rnd = random.Random(seed)
    groups = [(g, [a for a in normal_subgroups(g) if g.order // len(a) <= max_quotient])
              for g in small_groups()]
    out = []
    while len(out) < count:
        g, normals = rnd.choice(groups)
        a = rnd.choice(normals)
        spec = FreeProductSpec((FactorSpec.finite("G", g),), Alphabet.of(rnd.choice(["x", "x, y"])))
        w = random_word(rnd, spec, "G", g.order, rnd.randint(1, 7))
        try:
            orb = orbit_system(w, a)
        except NoQuotientSolution:
            continue
        out.append((w, a, orb))
    return out


def orbit_symmetric(orb) -> bool:
    B = orb.quotient
    xs = {x for (_, x) in orb.variables}
    e = B.identity
    for b in range(B.order):
        for b2 in range(B.order):
            for x in xs:
                if orb.exponent(b, b2, x) != orb.exponent(e, B.mul(B.inv(b), b2), x):
                    return False
    return True
