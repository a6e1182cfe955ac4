"""Hypothesis reports, the orbit-system rewriting over a normal subgroup, and the solver."""

from groupeq.mixedwords import EquationSystem
from groupeq.parsing import parse
from groupeq.solver import solve_over
from groupeq.theorems import check_gr, check_main, check_nitsche_thom, orbit_exponent_matrix, orbit_system

V4 = """group V = finite { table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]; labels = [e, b, a, ab] }
subgroup A = V < a >;
vars x;
eq: x a x b x = 1;
"""

if __name__ == "__main__":
    doc = parse(V4)
    w = doc.system.equations[0]
    a = doc.subgroup("A").elements
    print(check_main(w, a, doc.assertion_flags()))
    print(check_nitsche_thom(doc.system, doc.assertion_flags(), max_index=2))

    orb = orbit_system(w, a)
    print("substitution:", {x: doc.group("V").group.label(v) for x, v in orb.substitution.items()})
    for eq in orb.system.equations:
        print("  ", eq, "= 1")
    print(orbit_exponent_matrix(orb))
    print(check_gr(orb.system))

    rep = solve_over(EquationSystem(doc.system.spec, (w,)))
    for name, order, outcome in rep.attempts:
        print(f"  {name:18} order {order:4}  {outcome}")
    if rep.solution:
        print("solution:", rep.solution.describe())
