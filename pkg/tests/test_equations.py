from hypothesis import given, strategies as st

from groupeq.equations import dependency, exponent_matrix, is_nonsingular, relator_matrix
from groupeq.parsing import parse
from groupeq.words import Alphabet

from conftest import load

LINEAR = """group G = free { a, b, c, d }
vars x, y, z, t;
eq: axbycyz^5 dz^-2 = 1;
eq: [xt, dz]^2022 dx^4 cy^5 bz^6 = 1;
eq: ax^7 y^8 dz^%d = 1;
"""


def test_linear_system_matrix():
    sys = load("linear_system_k2022.geq").system
    m = exponent_matrix(sys)
    assert m.matrix.tolist() == [[1, 2, 3, 0], [4, 5, 6, 0], [7, 8, 2022, 0]]
    assert [g.name for g in m.col_labels] == ["x", "y", "z", "t"]
    assert is_nonsingular(sys)
    assert dependency(sys) is None


def test_singular_member_has_dependency():
    sys = load("linear_system_k9.geq").system
    assert not is_nonsingular(sys)
    v = dependency(sys)
    rows = exponent_matrix(sys).matrix.tolist()
    assert any(v) and all(sum(v[i] * rows[i][j] for i in range(3)) == 0 for j in range(4))


def test_conjugate_equation_is_singular():
    sys = load("conjugate_c2.geq").system
    assert exponent_matrix(sys).matrix.tolist() == [[0]]
    assert not is_nonsingular(sys)


def test_relator_matrix():
    alph = Alphabet.of("x, y")
    m = relator_matrix([alph.parse("x^2 y x^-1"), alph.parse("y^3")], alph)
    assert m.tolist() == [[1, 1], [0, 3]]


@given(st.integers(-30, 30))
def test_singular_exactly_at_nine(k):
    assert is_nonsingular(parse(LINEAR % k).system) == (k != 9)
