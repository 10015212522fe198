"""
Kauffman bracket, Jones polynomial and colored (cabled) brackets.

The default evaluator is a state sum over all 2^c smoothings, with loops
counted by union-find over arc labels.  Two slower evaluators that resolve one
crossing at a time are kept as independent oracles:

* ``bracket_skein`` applies the bracket's crossing rule recursively.
* ``jones_skein`` applies the oriented Jones skein relation, switching
  crossings until the diagram is descending (hence an unlink).

Smoothing convention for a crossing (a, b, c, d): the A-smoothing joins a-b
and c-d, the B-smoothing joins a-d and b-c.  With this choice a positive kink
evaluates to -A^3.
"""

from __future__ import annotations

import functools
from collections import Counter
from typing import Hashable, Sequence

from .cyclotomic import LaurentPoly
from .diagram import (FramedLinkDiagram, PDCode, _oriented, cable_multi, cabled_crossing_count,
                      self_writhes, writhe)
from .errors import NonIntegralExponent, TooManyCrossings

DEFAULT_MAX_CROSSINGS = 26


def delta_poly() -> LaurentPoly:
    """The loop value -A^2 - A^-2."""
    return LaurentPoly({2: -1, -2: -1})


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_MAX_CROSSINGS if cap is None else cap
    if n > cap:
        raise TooManyCrossings(n, cap)


def _state_counts(pd: PDCode) -> Counter:
    """Counter mapping (#A - #B, #loops) -> number of states."""
    crossings = pd.crossings
    labels = sorted({x for c in crossings for x in c})
    index = {x: i for i, x in enumerate(labels)}
    idx = [tuple(index[x] for x in c) for c in crossings]
    free = sum(1 for comp in pd.components if comp[0] not in index)
    n, nl = len(idx), len(labels)
    counts: Counter = Counter()
    for state in range(1 << n):
        parent = list(range(nl))
        merges = 0
        for k, (a, b, c, d) in enumerate(idx):
            if state >> k & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for u, v in pairs:
                while parent[u] != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                if u != v:
                    parent[u] = v
                    merges += 1
        loops = nl - merges + free
        nb = bin(state).count("1")
        counts[(n - 2 * nb, loops)] += 1
    return counts


@functools.lru_cache(maxsize=4096)
def _renormalized_cached(pd: PDCode) -> LaurentPoly:
    by_loops: dict[int, dict[int, int]] = {}
    for (shift, loops), n in _state_counts(pd).items():
        by_loops.setdefault(loops, {})[shift] = n
    delta = delta_poly()
    out = LaurentPoly()
    for loops, terms in by_loops.items():
        out = out + LaurentPoly(terms) * delta ** loops
    return out


def bracket_renormalized(pd: PDCode, max_crossings: int | None = None) -> LaurentPoly:
    """[L] = -(A^2 + A^-2)<L>, with [empty] = 1."""
    _check_cap(pd.n_crossings, max_crossings)
    if pd.n_components == 0:
        return LaurentPoly.constant(1)
    return _renormalized_cached(pd)


def bracket(pd: PDCode, max_crossings: int | None = None) -> LaurentPoly:
    """Kauffman bracket normalized so that a single circle evaluates to 1."""
    _check_cap(pd.n_crossings, max_crossings)
    if pd.n_components == 0:
        raise ValueError("the bracket of the empty diagram is 1/delta, not a Laurent polynomial")
    counts = _state_counts(pd)
    delta = delta_poly()
    out = LaurentPoly()
    for (shift, loops), n in counts.items():
        out = out + LaurentPoly.monomial(shift, n) * delta ** (loops - 1)
    return out


# ---------------------------------------------------------------------------
# independent oracles


def _merge(crossings: tuple, old: Hashable, new: Hashable) -> tuple:
    return tuple(tuple(new if x == old else x for x in c[:4]) + tuple(c[4:]) for c in crossings)


def _join(crossings: tuple, u: Hashable, v: Hashable) -> tuple[tuple, int]:
    """Join arc ends u and v after a crossing is removed; returns (crossings, new loops)."""
    if u == v:
        return crossings, 1
    return _merge(crossings, v, u), 0


@functools.lru_cache(maxsize=None)
def _skein_bracket(crossings: tuple, loops: int) -> LaurentPoly:
    if not crossings:
        return delta_poly() ** loops
    (a, b, c, d), rest = crossings[0], crossings[1:]
    out = LaurentPoly()
    for coeff, (p1, p2) in ((1, ((a, b), (c, d))), (-1, ((a, d), (b, c)))):
        cs, l1 = _join(rest, *p1)
        u, v = p2
        # the first join may have renamed one of the second pair
        if p1[1] == u:
            u = p1[0]
        if p1[1] == v:
            v = p1[0]
        cs, l2 = _join(cs, u, v)
        out = out + LaurentPoly.monomial(coeff) * _skein_bracket(cs, loops + l1 + l2)
    return out


def bracket_skein(pd: PDCode) -> LaurentPoly:
    """Oracle: the bracket by recursive crossing resolution (single circle = 1)."""
    if pd.n_components == 0:
        raise ValueError("the bracket of the empty diagram is not a Laurent polynomial")
    used = {x for c in pd.crossings for x in c}
    free = sum(1 for comp in pd.components if comp[0] not in used)
    total = _skein_bracket(tuple(pd.crossings), free)
    # divide by delta: every state has at least one loop
    return _divide_by_delta(total)


def _divide_by_delta(poly: LaurentPoly) -> LaurentPoly:
    # -A^-2 (1 + A^4) divides poly; do long division by (1 + A^4) from the top
    rem = dict(poly.coeffs)
    q: dict[int, int] = {}
    while rem:
        top = max(rem)
        c = rem.pop(top)
        if c == 0:
            continue
        q[top - 4] = c
        rem[top - 4] = rem.get(top - 4, 0) - c
        if rem[top - 4] == 0:
            del rem[top - 4]
        if rem and max(rem) < min(poly.coeffs) - 4:
            raise ArithmeticError("not divisible by delta")
    # poly = (1 + A^4) * Q, and delta = -A^-2 (1 + A^4), so poly / delta = -A^2 Q
    return LaurentPoly(q).shift(2) * -1


def _jones_skein_rec(crossings: tuple, free: int, order: tuple) -> LaurentPoly:
    """Jones polynomial in s (t = s^2) of oriented crossings plus free circles."""
    s = LaurentPoly.monomial(1, var="s")
    loop = -(s + s ** -1)
    nxt: dict = {}
    where: dict = {}
    for i, (a, b, c, d, pos) in enumerate(crossings):
        o_in, o_out = (d, b) if pos else (b, d)
        nxt[a] = c
        nxt[o_in] = o_out
        where[a] = (i, "under")
        where[o_in] = (i, "over")
    # trace components from their smallest-ranked arc
    rank = {x: k for k, x in enumerate(order)}
    seen: set = set()
    comps = []
    for x in sorted(nxt, key=lambda y: rank.get(y, len(rank))):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = nxt[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = nxt[y]
        comps.append(cyc)
    comp_index = {arc: k for k, cyc in enumerate(comps) for arc in cyc}
    # find the first crossing that breaks descending order
    visited: set = set()
    bad = None
    for k, cyc in enumerate(comps):
        for arc in cyc:
            i, role = where[arc]
            a, b, c, d, pos = crossings[i]
            under_comp, over_comp = comp_index[a], comp_index[b]
            if under_comp != over_comp:
                if over_comp > under_comp:
                    bad = i
            elif i not in visited and role == "under":
                bad = i
            visited.add(i)
            if bad is not None:
                break
        if bad is not None:
            break
    if bad is None:
        n = len(comps) + free
        return loop ** (n - 1)
    a, b, c, d, pos = crossings[bad]
    rest = crossings[:bad] + crossings[bad + 1:]
    if pos:
        switched = crossings[:bad] + ((d, a, b, c, False),) + crossings[bad + 1:]
    else:
        switched = crossings[:bad] + ((b, c, d, a, True),) + crossings[bad + 1:]
    o_in, o_out = (d, b) if pos else (b, d)
    # oriented smoothing: under-in continues as over-out, over-in as under-out
    cs, l1 = _join(rest, a, o_out)
    u, v = o_in, c
    if o_out == u:
        u = a
    if o_out == v:
        v = a
    cs, l2 = _join(cs, u, v)
    v_switch = _jones_skein_rec(switched, free, order)
    v_zero = _jones_skein_rec(cs, free + l1 + l2, order)
    t = s ** 2
    if pos:
        # V(L+) = t^2 V(L-) + t (s - 1/s) V(L0)
        return t * t * v_switch + t * (s - s ** -1) * v_zero
    # V(L-) = t^-2 V(L+) - t^-1 (s - 1/s) V(L0)
    return (t ** -2) * v_switch - (t ** -1) * (s - s ** -1) * v_zero


def jones_skein(pd: PDCode) -> LaurentPoly:
    """Oracle: Jones polynomial in s = t^(1/2) straight from the skein relation."""
    if pd.n_components == 0:
        raise ValueError("empty link")
    oriented = tuple(_oriented(pd))
    used = {x for c in pd.crossings for x in c}
    free = sum(1 for comp in pd.components if comp[0] not in used)
    order = tuple(x for comp in pd.components for x in comp)
    return _jones_skein_rec(oriented, free, order)


# ---------------------------------------------------------------------------
# Jones polynomial from the bracket


def jones(d: FramedLinkDiagram | PDCode, max_crossings: int | None = None) -> LaurentPoly:
    """V_L in the variable s with s^2 = t, via V = (-A^3)^-w <L> and A = s^(-1/2)."""
    pd = d.pd if isinstance(d, FramedLinkDiagram) else d
    w = writhe(pd)
    b = bracket(pd, max_crossings)
    unnorm = b * LaurentPoly.monomial(-3 * w, (-1) ** w)

    def to_s(e: int) -> int:
        if e % 2:
            raise NonIntegralExponent(f"A-exponent {e} gives a half-integer power of s")
        return -e // 2

    return unnorm.map_exponents(to_s, var="s")


def format_jones_t(v: LaurentPoly) -> str:
    """Render a polynomial in s as one in t (s-exponent e becomes t^(e/2))."""
    from fractions import Fraction

    from .cyclotomic import format_terms

    def fmt(e):
        f = Fraction(e, 2)
        return str(f.numerator) if f.denominator == 1 else f"({f})"

    return format_terms(v.items(), "t", fmt)


# ---------------------------------------------------------------------------
# Chebyshev elements and colored brackets


@functools.lru_cache(maxsize=None)
def chebyshev_coeffs(i: int) -> tuple[int, ...]:
    """Coefficients c_m of e_i(z) = sum c_m z^m, from e_{i+1} = z e_i - e_{i-1}."""
    if i < 0:
        raise ValueError("color must be nonnegative")
    if i == 0:
        return (1,)
    if i == 1:
        return (0, 1)
    prev, cur = chebyshev_coeffs(i - 2), chebyshev_coeffs(i - 1)
    out = [0] + list(cur)
    for m, c in enumerate(prev):
        out[m] -= c
    return tuple(out)


def twist_eigenvalue(i: int) -> LaurentPoly:
    """mu_i = (-1)^i A^(i(i+2)): the effect of one positive full twist on e_i."""
    return LaurentPoly.monomial(i * (i + 2), (-1) ** i)


def colored_bracket(d: FramedLinkDiagram, colors: Sequence[int] | None = None,
                    max_crossings: int | None = None) -> LaurentPoly:
    """[.]-normalized bracket with every component replaced by its e_i.

    Each color-i component is expanded as sum_m c_{i,m} (m-cable); a framing
    that differs from the component's blackboard self-writhe contributes
    mu_i^(framing - self writhe).
    """
    if colors is None:
        colors = d.colors
    if colors is None or any(c is None for c in colors):
        raise ValueError("every component needs a color")
    pd = d.pd
    expansions = [chebyshev_coeffs(c) for c in colors]
    cap = cabled_crossing_count(pd, [len(e) - 1 for e in expansions])
    _check_cap(cap, max_crossings)
    sw = self_writhes(pd)
    total = LaurentPoly()
    ranges = [[m for m, c in enumerate(e) if c] for e in expansions]
    import itertools

    for mults in itertools.product(*ranges):
        coeff = 1
        for e, m in zip(expansions, mults):
            coeff *= e[m]
        total = total + bracket_renormalized(cable_multi(pd, mults), max_crossings) * coeff
    for c, f, w in zip(colors, d.framings, sw):
        total = total * twist_eigenvalue(c) ** (f - w)
    return total
