import pytest
from hypothesis import given
from hypothesis import strategies as st

from cobordism_classes.coeff_ring import CoeffPoly, augment, generator
from cobordism_classes.graded_series import (GradedSeries, Var, check_symmetric,
                                             elementary_symmetric, rewrite_in_elementary)
from cobordism_classes.pushforward import (PushforwardContext, cohomology_pushforward,
                                           grassmann_pushforward, quillen_pushforward,
                                           segre_pushforward, trivial_proj_pushforward)
from conftest import coeff_polys

b1, b2 = generator(1), generator(2)
X = GradedSeries.variable("x")


def fiber(k, name="t"):
    return GradedSeries.variable(name, (Var("u", 2), Var(name, k)))


def roots(n):
    return ["t%d" % (i + 1) for i in range(n)]


def test_trivial_projectivization_values():
    for k in range(5):
        t = fiber(k + 1)
        assert trivial_proj_pushforward(t ** k, k) == 1
        assert trivial_proj_pushforward(t ** (k + 1), k).is_zero()
    assert trivial_proj_pushforward(fiber(2), 2).constant_coeff() == b1


def test_trivial_projectivization_is_base_linear():
    t = fiber(3)
    u = GradedSeries.variable("u", t.vars)
    out = trivial_proj_pushforward(u * t + t ** 2, 2)
    assert str(out) == "1 + b1*u"


def test_cohomology_pushforward():
    t = fiber(3, "z")
    u = GradedSeries.variable("u", t.vars)
    assert cohomology_pushforward(t ** 3, 3, "z") == 1
    assert cohomology_pushforward(t ** 2, 3, "z").is_zero()
    assert cohomology_pushforward(u * t ** 3, 3, "z") == GradedSeries.variable("u", (Var("u", 2),))


def test_line_bundle_projectivization_is_identity():
    out = quillen_pushforward(X ** 3 + X, ["t1"], 4)
    t = GradedSeries.variable("t1", (Var("t1"),), 4)
    assert out == t ** 3 + t


def test_rank_two_square():
    out = quillen_pushforward(X ** 2, roots(2), 3)
    assert str(out) == "t1 + t2 - b1*t1*t2 + (b1^2 - b2)*t1^2*t2 + (b1^2 - b2)*t1*t2^2"


def test_working_order_contract():
    ctx = PushforwardContext.projective(3, 5)
    assert ctx.working_order == 8
    assert PushforwardContext.grassmann(4, 2, 5, residue=True).working_order == 5 + 1 + 6


@pytest.mark.parametrize("k", range(5))
def test_specializing_roots_gives_trivial_values(k):
    for i in range(k + 1):
        out = quillen_pushforward(X ** i, roots(k + 1), k)
        assert out.constant_coeff() == generator(k - i)


@given(st.lists(coeff_polys(max_terms=2), min_size=1, max_size=5), st.integers(1, 3))
def test_augmented_pushforward_matches_segre(cs, n):
    f = GradedSeries((Var("x"),), {(m,): c for m, c in enumerate(cs)})
    deg = 3
    out = quillen_pushforward(f, roots(n), deg)
    ts = [GradedSeries.variable(r, tuple(Var(s) for s in roots(n))) for r in roots(n)]
    chern = [elementary_symmetric(k, ts) for k in range(1, n + 1)]
    f_aug = f.map_coeffs(lambda c: CoeffPoly.constant(augment(c)))
    want = segre_pushforward(f_aug, chern, "x").truncate(deg)
    got = out.map_coeffs(lambda c: CoeffPoly.constant(augment(c)))
    assert got == want


@given(coeff_polys(max_terms=2), st.integers(0, 3), st.integers(2, 3))
def test_module_property(c, power, n):
    ring = (Var("s"),) + tuple(Var(r) for r in roots(n))
    s = GradedSeries.variable("s", ring)
    e1 = elementary_symmetric(1, [GradedSeries.variable(r, ring) for r in roots(n)])
    a = (s + e1).scale(c) + 1
    f = GradedSeries.variable("x", ring + (Var("x"),)) ** power
    lhs = quillen_pushforward(f * a.embed(f.vars), roots(n), 3)
    rhs = quillen_pushforward(f, roots(n), 3) * a
    assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3, 4])
def test_output_is_symmetric(n):
    out = quillen_pushforward(X ** (n + 1), roots(n), 3)
    assert check_symmetric(out, roots(n)) is None


def test_extra_working_order_changes_nothing():
    low = quillen_pushforward(X ** 3, roots(3), 3)
    high = quillen_pushforward(X ** 3, roots(3), 5).truncate(3)
    assert low.terms == high.terms


def test_grassmann_r1_delegates():
    y = GradedSeries.variable("y1")
    assert grassmann_pushforward(y ** 3, roots(3), 1, 3) == quillen_pushforward(X ** 3, roots(3), 3)


def _top_power(r, power):
    ring = tuple(Var("y%d" % (k + 1)) for k in range(r))
    top = GradedSeries.constant(1, ring)
    for k in range(r):
        top = top * GradedSeries.variable("y%d" % (k + 1), ring)
    return top ** power


def test_grassmann_dual_route_leading_term():
    out = grassmann_pushforward(_top_power(2, 2), roots(3), 2, 4)
    c = rewrite_in_elementary(out, roots(3), ["c1", "c2", "c3"])
    assert str(c) == "c2 - 2*b1*c3 + (b1^2 - b2)*c1*c3"


@pytest.mark.parametrize("n,r,power", [(3, 2, 2), (3, 1, 3), (4, 3, 2), (4, 1, 2), (2, 1, 2)])
def test_subset_residue_agrees_with_core_routes(n, r, power):
    f = _top_power(r, power)
    core = grassmann_pushforward(f, roots(n), r, 4)
    residue = grassmann_pushforward(f, roots(n), r, 4, method="residue")
    assert core == residue


def test_general_grassmannian_needs_extension():
    with pytest.raises(ValueError):
        grassmann_pushforward(_top_power(2, 3), roots(4), 2, 3)
    out = grassmann_pushforward(_top_power(2, 3), roots(4), 2, 3, extension=True)
    c = rewrite_in_elementary(out, roots(4), ["c1", "c2", "c3", "c4"])
    assert c.homogeneous_components()[2] == GradedSeries.variable("c2", c.vars, 3)
