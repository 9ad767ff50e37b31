import sympy
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cobordism_classes.chern_dold import (Genus, apply_genus, ch, cohomology_name,
                                          genus_agrees_with_augment, log_exp_identity,
                                          n_series_check, push_to_point, rr_projective,
                                          rr_trivial, todd_class, todd_of, todd_series)
from cobordism_classes.coeff_ring import CoeffPoly, generator
from cobordism_classes.graded_series import GradedSeries, Var
from cobordism_classes.space_models import parse_bundle
from cobordism_classes.verification import model_series, parse_series

from conftest import coeff_polys

b1, b2, b3 = generator(1), generator(2), generator(3)


def test_names():
    assert cohomology_name("u") == "z"
    assert cohomology_name("u2") == "z2"
    assert cohomology_name("t") == "w"
    assert cohomology_name("_t3") == "_w3"
    assert cohomology_name("c1") == "hc1"


def test_character_of_the_hyperplane_class():
    b = parse_bundle("O(1)@CP1")
    assert str(ch(model_series("u", b))) == "z"
    b = parse_bundle("O(1)@CP2")
    assert str(ch(model_series("u", b))) == "z - 1/2*b1*z^2"


def test_character_fixes_coefficients():
    b = parse_bundle("O(1)@CP2")
    assert ch(model_series("b1 + b2", b)) == model_series("b1 + b2", b).rename({"u": "z"})


CP3 = (Var("u", 3),)


@st.composite
def cp3_series(draw):
    coeffs = [draw(coeff_polys()) for _ in range(4)]
    terms = {(i,): c for i, c in enumerate(coeffs) if not c.is_zero()}
    return GradedSeries(CP3, terms)


@given(cp3_series(), cp3_series())
def test_character_is_multiplicative(f, g):
    assert ch(f * g) == ch(f) * ch(g)
    assert ch(f + g) == ch(f) + ch(g)


def test_todd_series():
    t = todd_series(2)
    x = (Var("z"),)
    assert t == parse_series("1 + 1/2*b1*z + (-1/4*b1^2 + 1/3*b2)*z^2", x).truncate(2)


def test_todd_is_multiplicative_on_sums():
    ring = (Var("z", None),)
    z = GradedSeries.variable("z", ring, 4)
    assert todd_class([z, z]) == todd_of(z) ** 2
    assert todd_class([]) == 1


def test_log_exp():
    assert log_exp_identity(7)


@given(st.lists(coeff_polys(), min_size=1, max_size=5), st.integers(1, 3))
def test_riemann_roch_trivial(coeffs, k):
    ring = (Var("u", 2), Var("t", k))
    terms = {}
    for idx, c in enumerate(coeffs):
        i, j = divmod(idx, k + 1)
        if i <= 2 and not c.is_zero():
            terms[(i, j)] = c
    f = GradedSeries(ring, terms)
    assert rr_trivial(f, k).holds


@pytest.mark.parametrize("n", [2, 3])
def test_riemann_roch_projective(n):
    roots = ["t%d" % (i + 1) for i in range(n)]
    ring = tuple(Var(r) for r in roots) + (Var("x"),)
    x = GradedSeries.variable("x", ring)
    for f in (x ** (n - 1), x ** n, x ** (n + 1) * generator(1)):
        assert rr_projective(f, roots, 3).holds


@pytest.mark.parametrize("text", ["O(1)@CP2", "O(1)+O(2)@CP3", "O(1,0)+O(0,1)@CP1xCP2"])
def test_n_series(text):
    assert n_series_check(parse_bundle(text)).holds


def test_genus_examples():
    todd = Genus.todd(3)
    assert [todd.value_of_generator(i) for i in range(4)] == [1, 1, 1, 1]
    assert apply_genus(b1 * b1 - b2, todd) == 0
    sym = Genus.symbolic(2)
    assert apply_genus(b1, sym) == 2 * sympy.Symbol("lam1")
    y = sympy.Symbol("y")
    chi = Genus.chi_y(2)
    assert chi.value_of_generator(2) == sympy.expand(1 - y + y ** 2)
    assert Genus.chi_y(2, y=sympy.Integer(-1)).value_of_generator(2) == 3


def test_signature_of_cp2():
    # chi_y at y = 1 is the signature
    sig = Genus.chi_y(4, y=sympy.Integer(1))
    assert [sig.value_of_generator(i) for i in range(5)] == [1, 0, 1, 0, 1]


def test_elliptic_genus_logarithm():
    d, e = sympy.symbols("delta epsilon")
    ell = Genus.ochanine(4)
    assert ell.lambdas == (0, d / 3, 0, sympy.Rational(3, 10) * d ** 2 - e / 10)
    x = sympy.Symbol("x")
    again = Genus.from_logarithm(sympy.asinh(x), x, 4)
    assert again.lambdas == Genus.ochanine(4, sympy.Integer(-1) / 2, 0).lambdas


@given(coeff_polys(), coeff_polys())
def test_genus_is_a_ring_map(p, q):
    g = Genus.symbolic(3)
    assert sympy.expand(apply_genus(p * q, g) - apply_genus(p, g) * apply_genus(q, g)) == 0
    assert sympy.expand(apply_genus(p + q, g) - apply_genus(p, g) - apply_genus(q, g)) == 0


@given(coeff_polys())
def test_trivial_genus_is_augmentation(p):
    assert genus_agrees_with_augment(p)


def test_push_to_point():
    ring = (Var("u", 2),)
    x = GradedSeries(ring, {(0,): CoeffPoly.constant(1), (2,): b1})
    assert push_to_point(x, {"u": 2}) == b2 + b1
