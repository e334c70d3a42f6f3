import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyharm.algebra import AtomSet, Expr, merge_atom_sets
from polyharm.errors import ClosureError, DomainError, UsageError
from polyharm.geometries import disc_times_line, hyperbolic_disc, sol
from polyharm.parser import parse
from polyharm.rationals import GaussianRational

from conftest import gaussian_rationals

SOL = sol().atoms
DISC = hyperbolic_disc().atoms
DISC_LINE = disc_times_line().atoms


def sol_exprs(max_terms=4):
    term = st.tuples(
        gaussian_rationals(),
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
        st.integers(-3, 3),
    )

    def build(terms):
        total = Expr.zero(SOL)
        for coeff, (px, py, pt), w in terms:
            total = total + Expr.monomial(
                SOL, coeff, {"x": px, "y": py, "t": pt}, weight=w
            )
        return total

    return st.builds(build, st.lists(term, min_size=0, max_size=max_terms))


# -- add ---------------------------------------------------------------------


def test_add_cancels_to_canonical_zero():
    x2 = Expr.monomial(SOL, 1, {"x": 2})
    assert (x2 + (-x2)).is_zero()
    assert (x2 - x2) == Expr.zero(SOL)


def test_add_builds_harmonic_combination():
    f = 2 * Expr.monomial(SOL, 1, {"x": 2}) + (-1) * Expr.exponential(SOL, -2)
    assert f == parse("2*x^2 - E(-2)", SOL)


@settings(max_examples=80)
@given(sol_exprs(), sol_exprs())
def test_add_commutes(a, b):
    assert a + b == b + a


@settings(max_examples=60)
@given(sol_exprs(), sol_exprs(), sol_exprs())
def test_canonical_form_under_reassociation(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a + b) * c == a * c + b * c


def test_add_rejects_atom_set_mismatch():
    with pytest.raises(UsageError):
        Expr.variable(SOL, "x") + Expr.variable(DISC, "z")


# -- multiply ------------------------------------------------------------------


def test_multiply_identity():
    f = parse("2*x^2 - E(-2)", SOL)
    assert Expr.constant(SOL, 1) * f == f


def test_multiply_merges_exponential_weights():
    f = parse("2*x^2 - E(-2)", SOL)
    h = parse("2*y^2 - E(2)", SOL)
    assert f * h == parse("4*x^2*y^2 - 2*x^2*E(2) - 2*y^2*E(-2) + 1", SOL)


def test_multiply_tower_prefactor_distributes():
    f1 = parse("1 + x + y + x*y", SOL)
    t4 = Expr.monomial(SOL, 1, {"t": 4})
    assert t4 * f1 == parse("t^4 + x*t^4 + y*t^4 + x*y*t^4", SOL)


@settings(max_examples=60)
@given(sol_exprs(max_terms=3), sol_exprs(max_terms=3))
def test_multiply_commutes(a, b):
    assert a * b == b * a


# -- closure rules --------------------------------------------------------------


def test_log_squared_is_refused():
    log = Expr.log(DISC)
    with pytest.raises(ClosureError):
        log * log


def test_log_times_conformal_power_is_refused():
    log = Expr.log(DISC_LINE)
    z = Expr.variable(DISC_LINE, "z")
    with pytest.raises(ClosureError):
        z * log


def test_log_times_line_power_is_allowed():
    log = Expr.log(DISC_LINE)
    t = Expr.variable(DISC_LINE, "t")
    f = t * log
    assert str(f) == "t*log1m"


def test_log_derivative_in_conformal_direction_is_refused():
    f = Expr.variable(DISC_LINE, "t") * Expr.log(DISC_LINE)
    with pytest.raises(ClosureError):
        f.differentiate("z")
    assert f.differentiate("t") == Expr.log(DISC_LINE)


# -- differentiate ----------------------------------------------------------------


def test_exponential_derivative_carries_weight():
    assert Expr.exponential(SOL, -2).differentiate("t") == -2 * Expr.exponential(
        SOL, -2
    )


def test_polynomial_derivative():
    f = parse("2*x^3 - 3*x*E(-2)", SOL)
    assert f.differentiate("x") == parse("6*x^2 - 3*E(-2)", SOL)


def test_wirtinger_power_rule():
    f = Expr.monomial(DISC, 1, {"z": 2, "zb": 3})
    assert f.differentiate("zb") == Expr.monomial(DISC, 3, {"z": 2, "zb": 2})


@settings(max_examples=60)
@given(sol_exprs())
def test_mixed_partials_commute(f):
    for u, v in (("x", "y"), ("x", "t"), ("y", "t")):
        assert f.differentiate(u).differentiate(v) == f.differentiate(v).differentiate(u)


def test_unknown_variable_is_usage_error():
    with pytest.raises(UsageError):
        Expr.variable(SOL, "x").differentiate("z")


# -- evaluate ----------------------------------------------------------------------


def test_evaluate_zero():
    assert Expr.zero(SOL).evaluate((0.3, -0.2, 0.9)) == 0


def test_evaluate_harmonic_combination():
    f = parse("2*x^2 - E(-2)", SOL)
    assert f.evaluate((1.0, 0.0, 0.0)) == pytest.approx(1.0)


def test_evaluate_log_atom():
    f = -Expr.log(DISC)
    assert f.evaluate((0.5, 0.0)).real == pytest.approx(-math.log(0.75), abs=1e-15)
    assert f.evaluate((0.5, 0.0)).real == pytest.approx(0.2876820724, abs=1e-9)


def test_evaluate_conformal_pair_from_real_coordinates():
    f = Expr.variable(DISC, "z") * Expr.variable(DISC, "zb")
    assert f.evaluate((0.3, 0.4)) == pytest.approx(0.25)
    g = Expr.variable(DISC, "z")
    assert g.evaluate((0.3, 0.4)) == pytest.approx(0.3 + 0.4j)


def test_evaluate_domain_error_outside_disc():
    f = Expr.variable(DISC, "z")
    with pytest.raises(DomainError):
        f.evaluate((1.2, 0.0))


@settings(max_examples=60)
@given(sol_exprs(max_terms=3), sol_exprs(max_terms=3))
def test_evaluate_is_a_ring_homomorphism_up_to_rounding(a, b):
    p = (0.37, -0.61, 0.23)
    lhs = (a * b).evaluate(p)
    rhs = a.evaluate(p) * b.evaluate(p)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


# -- is_zero -------------------------------------------------------------------------


def test_is_zero_detects_cancellation():
    f = Expr.monomial(SOL, 1, {"x": 2}) - Expr.monomial(SOL, 1, {"x": 2})
    assert f.is_zero()


def test_is_zero_on_tension_of_harmonic():
    g = sol()
    assert g.tension(parse("2*x^2 - E(-2)", SOL)).is_zero()


def test_is_zero_has_no_tolerance():
    tiny = Expr.monomial(SOL, GaussianRational.of(1, 0) / 10**9, {"x": 1})
    assert not tiny.is_zero()


# -- atom sets -----------------------------------------------------------------------


def test_merge_atom_sets_rejects_collisions():
    with pytest.raises(UsageError):
        merge_atom_sets(SOL, AtomSet(("t",)))


def test_merge_atom_sets_carries_features():
    merged = merge_atom_sets(DISC, AtomSet(("t",)))
    assert merged.variables == ("z", "zb", "t")
    assert merged.log_kind == "log1m"
    assert merged.conformal == ("z", "zb")
