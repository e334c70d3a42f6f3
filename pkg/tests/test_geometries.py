import random

import pytest

from polyharm.algebra import Expr
from polyharm.errors import UsageError
from polyharm.families import (
    log_biharmonic,
    nil_biharmonic12,
    sol_axis_family,
    sol_h2h3,
    sol_tower,
)
from polyharm.geometries import (
    ProductGeometry,
    by_id,
    classify,
    disc_times_line,
    hyperbolic_disc,
    iterated_tension,
    line,
    nil,
    product_tension_binomial,
    punctured_sphere,
    sl2,
    sol,
)
from polyharm.parser import parse
from polyharm.verify import random_expr, random_nonzero_scalar, random_scalar

def _random_pair(rng, geometry, **kwargs):
    f = random_expr(rng, geometry.atoms, **kwargs)
    h = random_expr(rng, geometry.atoms, **kwargs)
    return f, h


def _geometry_cases():
    return [
        (sol(), {"weights": (-2, -1, 0, 1, 2)}),
        (nil(), {}),
        (sl2(), {}),
        (hyperbolic_disc(), {}),
        (punctured_sphere(), {}),
        (disc_times_line(), {}),
        (by_id("s2pxr"), {}),
        (line(), {}),
        (by_id("product:linexline"), {}),
    ]


# -- tension examples ----------------------------------------------------------


def test_sol_tension_kills_harmonic_family():
    g = sol()
    assert g.tension(parse("2*x^2 - E(-2)", g.atoms)).is_zero()
    assert g.tension(parse("2*x^3 - 3*x*E(-2)", g.atoms)).is_zero()


def test_sol_tension_of_constant():
    g = sol()
    assert g.tension(Expr.constant(g.atoms, 7)).is_zero()


def test_nil_tension_of_y2t():
    g = nil()
    b11 = random_nonzero_scalar(random.Random(3))
    f = b11 * parse("y^2*t", g.atoms)
    assert g.tension(f) == 2 * (b11 * parse("t + 2*x*y", g.atoms))


def test_sl2_tension_of_xt2():
    g = sl2()
    b3 = random_nonzero_scalar(random.Random(4))
    f = b3 * parse("x*t^2", g.atoms)
    assert g.tension(f) == 4 * (b3 * parse("x - y*t", g.atoms))


def test_disc_tension_of_log_under_both_conventions():
    paper = hyperbolic_disc("paper")
    f = -Expr.log(paper.atoms)
    assert paper.tension(f) == Expr.constant(paper.atoms, 4)
    metric = hyperbolic_disc("metric")
    assert metric.tension(-Expr.log(metric.atoms)) == Expr.constant(metric.atoms, 1)


def test_sphere_tension_of_log_under_both_conventions():
    paper = punctured_sphere("paper")
    f = Expr.log(paper.atoms)
    assert paper.tension(f) == Expr.constant(paper.atoms, 4)


# -- conformality examples -------------------------------------------------------


def test_sol_conformality_of_tower_prefactor_vanishes():
    g = sol()
    f1 = parse("1 + 2*x + 3*y + 4*x*y", g.atoms)
    for r in (1, 2, 5):
        tr = Expr.monomial(g.atoms, 1, {"t": r})
        assert g.conformality(tr, f1).is_zero()


def test_sol_conformality_of_h2_h3_pair():
    g = sol()
    rng = random.Random(11)
    for _ in range(10):
        a2, a3 = random_scalar(rng), random_scalar(rng)
        b2, b3 = random_scalar(rng), random_scalar(rng)
        if (a2.is_zero() and a3.is_zero()) or (b2.is_zero() and b3.is_zero()):
            continue
        h2 = a2 * sol_axis_family(2, "x", g) + a3 * sol_axis_family(3, "x", g)
        h3 = b2 * sol_axis_family(2, "y", g) + b3 * sol_axis_family(3, "y", g)
        x = Expr.variable(g.atoms, "x")
        y = Expr.variable(g.atoms, "y")
        expected = -4 * (
            (Expr.constant(g.atoms, a2) + 3 * (a3 * x))
            * (Expr.constant(g.atoms, b2) + 3 * (b3 * y))
        )
        assert g.conformality(h2, h3) == expected


def test_conformality_with_constant_vanishes():
    rng = random.Random(5)
    for geometry, kwargs in _geometry_cases():
        f = random_expr(rng, geometry.atoms, **kwargs)
        one = Expr.constant(geometry.atoms, 1)
        assert geometry.conformality(f, one).is_zero()


def test_disc_line_conformality_log_cases():
    g = disc_times_line()
    atoms = g.atoms
    t = Expr.variable(atoms, "t")
    log = Expr.log(atoms)
    assert g.conformality(log, t).is_zero()
    # kappa(t*L, L) = t * kappa(L, L) = c * t * z * zb  (metric: c = 1)
    u = Expr.variable(atoms, "z") * Expr.variable(atoms, "zb")
    assert g.conformality(t * log, log) == t * u


# -- iterated tension and classification -------------------------------------------


def test_iterated_tension_of_product_family():
    g = sol()
    h = sol_h2h3(1, 1, 1, 1)
    chain = iterated_tension(g, h, 2)
    assert chain[1] == g.tension(h)
    assert not chain[1].is_zero()
    assert chain[2].is_zero()


def test_iterated_tension_of_harmonic_is_all_zero():
    g = sol()
    chain = iterated_tension(g, parse("2*x^2 - E(-2)", g.atoms), 4)
    assert all(e.is_zero() for e in chain[1:])


def test_iterated_tension_of_t_fourth():
    g = sol()
    chain = iterated_tension(g, parse("t^4", g.atoms), 3)
    assert [str(e) for e in chain] == ["t^4", "12*t^2", "24", "0"]


def test_classify_nil_family_with_unit_parameters():
    g = nil()
    report = classify(g, nil_biharmonic12([1] * 12))
    assert report.order == 2


def test_classify_zero_function():
    g = sol()
    report = classify(g, Expr.zero(g.atoms))
    assert report.order == 0
    assert report.zero_input
    assert report.describe() == "zero function"


def test_classify_shifted_tower():
    g = sol()
    f = sol_tower(2, [1, 2, 3, 4], [5, 6, 7, 8])
    report = classify(g, f)
    assert report.order == 2
    f1 = parse("1 + 2*x + 3*y + 4*x*y", g.atoms)
    f2 = parse("5 + 6*x + 7*y + 8*x*y", g.atoms)
    t = Expr.variable(g.atoms, "t")
    assert report.chain[1] == 2 * f1 + 6 * (t * f2)


def test_classify_exceeds_bound():
    g = sol()
    report = classify(g, parse("x^2*y^2", g.atoms), r_max=3)
    assert report.order is None
    assert report.exceeds_bound


def test_classify_respects_definition_edges():
    g = sol()
    report = classify(g, parse("t^4", g.atoms))
    assert report.order == 3
    assert report.chain[report.order].is_zero()
    assert not report.chain[report.order - 1].is_zero()


# -- products ------------------------------------------------------------------------


def test_disc_times_line_matches_builtin_product_chart():
    rng = random.Random(12)
    g = disc_times_line()
    pieces = ProductGeometry(hyperbolic_disc(), line("t"))
    for _ in range(20):
        f = random_expr(rng, g.atoms, allow_log=True)
        assert pieces.tension(f) == g.tension(f)


def test_flat_plane_tension():
    g = by_id("product:linexline")
    f = parse("s^2*t + t^3", g.atoms)
    assert g.tension(f) == parse("2*t + 6*t", g.atoms)


def test_product_rejects_variable_collision():
    with pytest.raises(UsageError):
        ProductGeometry(line("t"), line("t"))


def test_cross_factor_conformality_vanishes_on_separable_pairs():
    rng = random.Random(13)
    g = disc_times_line()
    for _ in range(25):
        f1 = random_expr(rng, g.atoms, variables=("z", "zb"))
        f2 = random_expr(rng, g.atoms, variables=("t",))
        assert g.conformality(f1, f2).is_zero()


def test_binomial_expansion_n1_is_the_product_rule():
    rng = random.Random(14)
    g = disc_times_line()
    for _ in range(10):
        f1 = random_expr(rng, g.atoms, variables=("z", "zb"))
        f2 = random_expr(rng, g.atoms, variables=("t",))
        lhs = g.tension(f1 * f2)
        rhs = product_tension_binomial(g.first, f1, g.second, f2, 1)
        assert lhs == rhs
        assert rhs == g.first.tension(f1) * f2 + f1 * g.second.tension(f2)


def test_binomial_expansion_biharmonic_pair():
    g = by_id("product:linexline")
    f1 = parse("s^3 + s", g.atoms)
    f2 = parse("t^2 - 1", g.atoms)
    tau2 = product_tension_binomial(g.first, f1, g.second, f2, 2)
    expected = 2 * (g.first.tension(f1) * g.second.tension(f2))
    assert tau2 == expected
    assert not tau2.is_zero()
    assert product_tension_binomial(g.first, f1, g.second, f2, 3).is_zero()
    assert classify(g, f1 * f2).order == 3


def test_binomial_expansion_matches_direct_iteration_up_to_4():
    rng = random.Random(15)
    for gid in ("product:linexline", "h2xr"):
        g = by_id(gid)
        first_vars = g.first.atoms.variables
        second_vars = g.second.atoms.variables
        for _ in range(15):
            f1 = random_expr(rng, g.atoms, variables=first_vars, allow_log=(gid == "h2xr"))
            f2 = random_expr(rng, g.atoms, variables=second_vars)
            chain = iterated_tension(g, f1 * f2, 4)
            for n in range(1, 5):
                assert chain[n] == product_tension_binomial(
                    g.first, f1, g.second, f2, n
                )


# -- operator laws -----------------------------------------------------------------


def test_product_rule_on_every_geometry():
    rng = random.Random(16)
    for geometry, kwargs in _geometry_cases():
        for _ in range(15):
            f, h = _random_pair(rng, geometry, **kwargs)
            lhs = geometry.tension(f * h)
            rhs = (
                geometry.tension(f) * h
                + 2 * geometry.conformality(f, h)
                + f * geometry.tension(h)
            )
            assert lhs == rhs, geometry.name


def test_product_rule_with_log_factor():
    g = disc_times_line()
    atoms = g.atoms
    t = Expr.variable(atoms, "t")
    log = Expr.log(atoms)
    f = t * t * log  # t^2 L
    h = t
    lhs = g.tension(f * h)
    rhs = g.tension(f) * h + 2 * g.conformality(f, h) + f * g.tension(h)
    assert lhs == rhs


def test_tension_is_linear():
    rng = random.Random(17)
    for geometry, kwargs in _geometry_cases():
        f, h = _random_pair(rng, geometry, **kwargs)
        alpha, beta = random_scalar(rng), random_scalar(rng)
        assert geometry.tension(alpha * f + beta * h) == alpha * geometry.tension(
            f
        ) + beta * geometry.tension(h)


def test_conformality_is_symmetric_and_bilinear():
    rng = random.Random(18)
    for geometry, kwargs in _geometry_cases():
        f, h = _random_pair(rng, geometry, **kwargs)
        k = random_expr(rng, geometry.atoms, **kwargs)
        alpha = random_scalar(rng)
        assert geometry.conformality(f, h) == geometry.conformality(h, f)
        assert geometry.conformality(alpha * f + k, h) == alpha * geometry.conformality(
            f, h
        ) + geometry.conformality(k, h)


def test_operator_rejects_foreign_algebra():
    g = sol()
    with pytest.raises(UsageError):
        g.tension(parse("z", hyperbolic_disc().atoms))


# -- convention covariance ------------------------------------------------------------


def test_paper_convention_is_four_times_metric_on_surface():
    rng = random.Random(19)
    paper = hyperbolic_disc("paper")
    metric = hyperbolic_disc("metric")
    for _ in range(15):
        f = random_expr(rng, metric.atoms, allow_log=True)
        assert paper.tension(f) == 4 * metric.tension(f)


def test_paper_convention_z_part_scaling_on_product():
    rng = random.Random(20)
    paper = disc_times_line("paper")
    metric = disc_times_line("metric")
    for _ in range(15):
        f = random_expr(rng, metric.atoms, allow_log=True)
        z_part = metric.first.tension(f)
        t_part = metric.second.tension(f)
        assert metric.tension(f) == z_part + t_part
        assert paper.tension(f) == 4 * z_part + t_part


def test_conformal_log_orders_agree_under_both_conventions():
    for build in (hyperbolic_disc, punctured_sphere):
        orders = set()
        for convention in ("metric", "paper"):
            g = build(convention)
            orders.add(classify(g, log_biharmonic(g)).order)
        assert orders == {2}
