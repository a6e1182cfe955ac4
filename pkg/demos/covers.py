"""Covering complexes: homology, Euler characteristic and the Schreier-relator criterion."""

from groupeq.complexes import covering_complex, criterion_check, homology, standard_complex
from groupeq.cosets import low_index_subgroups, subgroup_presentation
from groupeq.groups import Presentation

EXAMPLES = {
    "projective plane": Presentation.of("x", "x^2"),
    "torus": Presentation.of("x, y", "x y x^-1 y^-1"),
    "Klein bottle": Presentation.of("x, y", "x y x^-1 y"),
    "C2 * C3": Presentation.of("x, y", "x^2", "y^3"),
}

if __name__ == "__main__":
    for name, p in EXAMPLES.items():
        base = standard_complex(p)
        print(f"{name}  {p}  H1 = {homology(base).h1()}  chi = {base.euler_characteristic}")
        for t in low_index_subgroups(p, 3):
            cover = covering_complex(p, t)
            h = homology(cover)
            rep = criterion_check(p, t)
            sp = subgroup_presentation(p, t)
            print(f"  index {t.index}: H1 = {h.h1():8} b2 = {h.b2}  chi = {cover.euler_characteristic:3}"
                  f"  Schreier gens {len(sp.alphabet)}  nonsingular {rep.schreier_nonsingular}"
                  f"  agree {rep.agree}")
