"""Exponent-sum matrices of a three-equation family and where it turns singular."""

from groupeq.equations import dependency, exponent_matrix, is_nonsingular
from groupeq.parsing import parse

FAMILY = """group G = free { a, b, c, d }
vars x, y, z, t;
eq: axbycyz^5 dz^-2 = 1;
eq: [xt, dz]^2022 dx^4 cy^5 bz^6 = 1;
eq: ax^7 y^8 dz^{%d} = 1;
"""

if __name__ == "__main__":
    sys9 = parse(FAMILY % 9).system
    print(exponent_matrix(sys9))
    print("second equation has", len(sys9.equations[1]), "syllables")
    print("dependency at k = 9:", dependency(sys9))
    singular = [k for k in range(-20, 21) if not is_nonsingular(parse(FAMILY % k).system)]
    print("singular for k in", singular)
