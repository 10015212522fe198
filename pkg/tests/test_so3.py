from __future__ import annotations

from fractions import Fraction

import pytest

from oracles import tl_torus_surgery
from so3period.bracket import twist_eigenvalue
from so3period.cyclotomic import LaurentPoly, cyclotomic_ring, galois_conj
from so3period.diagram import (FramedLinkDiagram, add_disjoint_unknot, figure_eight, mirror,
                               torus_link, trefoil, unknot, unlink)
from so3period.errors import IntegralityViolation, TooManyCrossings
from so3period.periodicity import GRID_NS
from so3period.so3 import (_embedding_value, _to_half_ring, brieskorn_invariant, delta,
                           delta_laurent, double_bracket, is_odd_prime, omega_coefficients,
                           so3_context, surgery_data, surgery_invariant, trade_color)

A = LaurentPoly.monomial(1)


def ring_value(p, poly):
    return cyclotomic_ring(2 * p).from_poly(poly.coeffs)


def test_is_odd_prime():
    assert [q for q in range(30) if is_odd_prime(q)] == [3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_context_rejects_non_primes():
    for bad in (2, 9, 15, 1):
        with pytest.raises(ValueError):
            so3_context(bad)


# -- normalization constants ------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_k_and_eta_identities(p):
    ctx = so3_context(p)
    R = ctx.ring4p
    assert ctx.k * ctx.k == ctx.A(-6 - p * (p + 1) // 2)
    assert ctx.eta * ctx.eta * p == -((ctx.A(2) - ctx.A(-2)) ** 2)
    omega = sum((ctx.to_ring4p(delta_laurent(i)) ** 2 for i in range(ctx.n_colors)), R.zero())
    assert ctx.eta * ctx.eta * omega == R.one()


@pytest.mark.parametrize("p", [5, 7, 11])
def test_eta_has_denominator_p(p):
    eta = so3_context(p).eta
    assert not eta.is_integral()
    assert {Fraction(c).denominator for c in eta.coeffs} <= {1, p}


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_eta_positive_at_standard_root(p):
    val = _embedding_value(so3_context(p).eta, p)
    assert abs(val.imag) < 1e-9 and val.real > 0


def test_omega_coefficients_are_deltas():
    ctx = so3_context(7)
    assert [i for i, _ in omega_coefficients(ctx)] == [0, 1, 2]
    assert delta(2, ctx) == ring_value(7, A**4 + 1 + A**-4)


# -- closed formula ---------------------------------------------------------------


def test_poincare_sphere_values():
    assert brieskorn_invariant(3, so3_context(5)).value == ring_value(5, 1 - 2 * A + 2 * A**2 - A**3)
    assert brieskorn_invariant(3, so3_context(7)).value == ring_value(7, -2 + A + 2 * A**3 - A**4)
    assert str(brieskorn_invariant(3, so3_context(5))) == "1 - 2A + 2A^2 - A^3"


def test_brieskorn_rejects_bad_n():
    for n in (0, 1, -1, 4):
        with pytest.raises(ValueError):
            brieskorn_invariant(n, so3_context(5))


@pytest.mark.parametrize("n", [3, -3, 11, -19])
def test_p3_invariant_is_trivial(n):
    assert brieskorn_invariant(n, so3_context(3)).value == cyclotomic_ring(6).one()


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("n", GRID_NS)
def test_closed_formula_matches_temperley_lieb_surgery(n, p):
    assert brieskorn_invariant(n, so3_context(p)).value == tl_torus_surgery(n, p)


# -- surgery route ----------------------------------------------------------------


@pytest.mark.parametrize("n, p", [(3, 5), (3, 7), (-3, 5), (-3, 7), (5, 5), (-5, 5)])
def test_surgery_matches_closed_formula(n, p):
    d = torus_link(n, framing=1)
    inv = surgery_invariant(d, so3_context(p))
    assert inv.ring_tag == "2p" and inv.provenance == "surgery"
    assert inv.value == brieskorn_invariant(n, so3_context(p)).value


@pytest.mark.parametrize("p", [5, 7])
def test_s3_presentations_give_one(p):
    ctx = so3_context(p)
    one = cyclotomic_ring(2 * p).one()
    empty = FramedLinkDiagram.from_pd(unlink(0).pd)
    for d in (empty, unknot(1), unknot(-1), torus_link(2, framing=0),
              FramedLinkDiagram(torus_link(2).pd, (2, 1)), FramedLinkDiagram(torus_link(-2).pd, (0, 0))):
        assert surgery_invariant(d, ctx).value == one


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("base", ["empty", "unknot0", "trefoil"])
@pytest.mark.parametrize("f", [1, -1])
def test_blow_up_invariance(base, f, p):
    ctx = so3_context(p)
    d = {"empty": FramedLinkDiagram.from_pd(unlink(0).pd), "unknot0": unknot(0),
         "trefoil": trefoil(True, 1)}[base]
    before = surgery_invariant(d, ctx)
    after = surgery_invariant(add_disjoint_unknot(d, f), ctx)
    assert (after.ring_tag, after.value) == (before.ring_tag, before.value)


@pytest.mark.parametrize("p", [5, 7])
def test_orientation_reversal_conjugates(p):
    ctx = so3_context(p)
    d = trefoil(True, 1)
    assert surgery_invariant(mirror(d), ctx).value == galois_conj(surgery_invariant(d, ctx).value)


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("d", [trefoil(True, -1), trefoil(False, 1), FramedLinkDiagram(figure_eight().pd, (1,)),
                               FramedLinkDiagram(figure_eight().pd, (-1,)),
                               FramedLinkDiagram(torus_link(4).pd, (1, 3))],
                         ids=["RH-1", "LH+1", "fig8+1", "fig8-1", "T24(1,3)"])
def test_homology_spheres_have_integer_invariants(d, p):
    _, _, _, det = surgery_data(d)
    assert abs(det) == 1
    inv = surgery_invariant(d, so3_context(p))
    assert inv.ring_tag == "2p"
    assert inv.value.is_integral()


def test_zero_surgery_lives_in_double_ring():
    inv = surgery_invariant(unknot(0), so3_context(5))
    assert inv.ring_tag == "4p"
    assert double_bracket(unknot(0), so3_context(5)).is_integral()


@pytest.mark.parametrize("p", [5, 7])
def test_double_bracket_integral_for_zero_framed_trefoil(p):
    assert double_bracket(trefoil(True, 0), so3_context(p)).is_integral()


def test_surgery_data():
    surgery, sub, sigma, det = surgery_data(FramedLinkDiagram(torus_link(2).pd, (2, 1), (None, 3)))
    assert surgery == [0] and sub == [[2]] and sigma == 1 and det == 2


# -- colored observed components ---------------------------------------------------


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_colored_unknot_in_s3(i, p):
    d = FramedLinkDiagram(unknot(0).pd, (0,), (i,))
    inv = surgery_invariant(d, so3_context(p), trade_colors=False)
    assert inv.value == ring_value(p, delta_laurent(i))


def test_trade_color():
    assert [trade_color(c, 7) for c in range(6)] == [0, 1, 2, 2, 1, 0]
    assert [trade_color(c, 5) for c in range(4)] == [0, 1, 1, 0]


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("framing", [0, 1, -2])
def test_color_trading_preserves_value(p, framing):
    for c in range((p - 1) // 2, p - 1):
        d = FramedLinkDiagram(unknot(0).pd, (framing,), (c,))
        traded = surgery_invariant(d, so3_context(p))
        direct = surgery_invariant(d, so3_context(p), trade_colors=False)
        assert traded.value == direct.value


def test_color_trading_on_hopf_with_surgery():
    ctx = so3_context(5)
    d = FramedLinkDiagram(torus_link(2).pd, (1, 2), (None, 2))
    assert surgery_invariant(d, ctx).value == surgery_invariant(d, ctx, trade_colors=False).value


def test_colored_surgery_invariant_uses_twist_eigenvalue():
    # a colored unknot with framing f in S^3 is mu_i^f Delta_i
    ctx = so3_context(7)
    d = FramedLinkDiagram(unknot(0).pd, (3,), (2,))
    expected = ring_value(7, twist_eigenvalue(2) ** 3 * delta_laurent(2))
    assert surgery_invariant(d, ctx).value == expected


# -- failure modes ----------------------------------------------------------------


def test_cap_exceeded_at_large_prime():
    with pytest.raises(TooManyCrossings):
        surgery_invariant(trefoil(True, 1), so3_context(11))


def test_half_ring_guard():
    ring = cyclotomic_ring(20)
    with pytest.raises(IntegralityViolation):
        _to_half_ring(ring.gen(), "test")
    with pytest.raises(IntegralityViolation):
        _to_half_ring(ring.one() * Fraction(1, 5), "test")
