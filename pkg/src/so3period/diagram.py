"""
Framed, oriented link diagrams in PD (planar diagram) notation.

Convention: a crossing is a 4-tuple ``(a, b, c, d)`` of arc labels listed
counterclockwise starting from the incoming under-arc, so the under-strand
runs a -> c.  Arc labels along each component are consecutive in traversal
order; the component list gives the cyclic order explicitly.  The over-strand
runs d -> b for a positive crossing and b -> d for a negative one.

A component with no crossings is a single arc label that appears in no
crossing tuple.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .errors import MalformedDiagram

Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[Crossing, ...] = ()
    components: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(x) for x in c) for c in self.crossings))
        object.__setattr__(self, "components", tuple(tuple(int(x) for x in c) for c in self.components))

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    def arc_component(self) -> dict[int, int]:
        return {arc: i for i, comp in enumerate(self.components) for arc in comp}

    def serialize(self) -> str:
        xs = ",".join("X(%d,%d,%d,%d)" % c for c in self.crossings)
        cs = ";".join(",".join(map(str, c)) for c in self.components)
        return f"{xs}|{cs}"


@dataclass(frozen=True)
class FramedLinkDiagram:
    """A PD code plus one integer framing per component and optional colors.

    A color of ``None`` marks a surgery component (to be cabled by the
    surgery element); an integer marks an observed component carrying the
    skein element of that color.
    """

    pd: PDCode
    framings: tuple[int, ...] = ()
    colors: tuple[int | None, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        if self.colors is not None:
            object.__setattr__(self, "colors", tuple(None if c is None else int(c) for c in self.colors))
        if len(self.framings) != self.pd.n_components:
            raise MalformedDiagram(
                f"{len(self.framings)} framings for {self.pd.n_components} components")
        if self.colors is not None:
            if len(self.colors) != self.pd.n_components:
                raise MalformedDiagram(
                    f"{len(self.colors)} colors for {self.pd.n_components} components")
            if any(c is not None and c < 0 for c in self.colors):
                raise MalformedDiagram("colors must be nonnegative")

    def check_colors(self, p: int) -> None:
        """Colors must lie in 0..p-2 once a prime p is in scope."""
        for i, c in enumerate(self.colors or ()):
            if c is not None and c > p - 2:
                raise MalformedDiagram(f"component {i} has color {c}, must be at most {p - 2}")

    @classmethod
    def from_pd(cls, pd: PDCode, framings: Sequence[int] | None = None,
                colors: Sequence[int | None] | None = None) -> FramedLinkDiagram:
        validate(pd)
        if framings is None:
            framings = [0] * pd.n_components
        return cls(pd, tuple(framings), None if colors is None else tuple(colors))


# ---------------------------------------------------------------------------
# validation and orientation


def _orient(pd: PDCode) -> tuple[bool, ...]:
    """Crossing signs (True = positive), validating the code along the way.

    For components with three or more arcs the over-strand direction follows
    from label adjacency.  With one or two arcs the labels alone are
    ambiguous: transitions fixed by under-passes are assigned first and the
    remaining transitions go to the over-passes in crossing order.
    """
    comp_of: dict[int, int] = {}
    nxt: dict[int, int] = {}
    for ci, comp in enumerate(pd.components):
        if not comp:
            raise MalformedDiagram(f"component {ci} has no arcs")
        for j, arc in enumerate(comp):
            if arc <= 0:
                raise MalformedDiagram(f"arc label {arc} is not positive")
            if arc in comp_of:
                raise MalformedDiagram(f"arc {arc} listed in two components")
            comp_of[arc] = ci
            nxt[arc] = comp[(j + 1) % len(comp)]

    counts = Counter(x for c in pd.crossings for x in c)
    for ci, crossing in enumerate(pd.crossings):
        if len(crossing) != 4:
            raise MalformedDiagram(f"crossing {ci} does not have 4 arcs")
        for arc in crossing:
            if arc not in comp_of:
                raise MalformedDiagram(f"arc {arc} in crossing {ci} belongs to no component")
    for arc, n in counts.items():
        if n != 2:
            raise MalformedDiagram(f"arc {arc} appears {n} times across crossings (expected 2)")
    for ci, comp in enumerate(pd.components):
        used = [a for a in comp if counts.get(a, 0)]
        if used and len(used) != len(comp):
            raise MalformedDiagram(f"component {ci} mixes crossed and free arcs")
        if not used and len(comp) != 1:
            raise MalformedDiagram(f"crossingless component {ci} must have a single arc")

    signs: list[bool | None] = [None] * len(pd.crossings)
    # transitions still unclaimed, per short component
    pending: dict[int, list[tuple[int, int]]] = {}
    for ci, comp in enumerate(pd.components):
        if len(comp) <= 2 and counts.get(comp[0], 0):
            pending[ci] = [(comp[j], comp[(j + 1) % len(comp)]) for j in range(len(comp))]

    for i, (a, b, c, d) in enumerate(pd.crossings):
        if comp_of[a] != comp_of[c] or nxt[a] != c:
            raise MalformedDiagram(f"crossing {i}: under-strand {a}->{c} is not consecutive")
        if comp_of[b] != comp_of[d]:
            raise MalformedDiagram(f"crossing {i}: over-strand arcs {b},{d} lie on different components")
        if comp_of[a] in pending:
            try:
                pending[comp_of[a]].remove((a, c))
            except ValueError:
                raise MalformedDiagram(f"crossing {i}: transition {a}->{c} used twice") from None

    for i, (a, b, c, d) in enumerate(pd.crossings):
        ob = comp_of[b]
        if ob in pending:
            continue
        fwd, back = nxt[d] == b, nxt[b] == d
        if fwd == back:
            raise MalformedDiagram(f"crossing {i}: over-strand arcs {b},{d} are not consecutive")
        signs[i] = fwd

    for i, (a, b, c, d) in enumerate(pd.crossings):
        ob = comp_of[b]
        if ob not in pending:
            continue
        left = pending[ob]
        for k, (u, v) in enumerate(left):
            if {u, v} == {b, d}:
                left.pop(k)
                signs[i] = (u == d)
                break
        else:
            raise MalformedDiagram(f"crossing {i}: over-strand {b},{d} matches no free transition")
    for ci, left in pending.items():
        if left:
            raise MalformedDiagram(f"component {ci}: transitions {left} never traversed")
    return tuple(bool(s) for s in signs)


def validate(pd: PDCode) -> None:
    """Raise :class:`MalformedDiagram` describing the first violated invariant."""
    _orient(pd)


def crossing_signs(pd: PDCode) -> tuple[int, ...]:
    return tuple(1 if s else -1 for s in _orient(pd))


def crossing_sign(pd: PDCode, index: int) -> int:
    return crossing_signs(pd)[index]


def mirror_pd(pd: PDCode) -> PDCode:
    """Swap over and under at every crossing."""
    out = []
    for (a, b, c, d), pos in zip(pd.crossings, _orient(pd)):
        out.append((d, a, b, c) if pos else (b, c, d, a))
    return PDCode(tuple(out), pd.components)


def mirror(d: FramedLinkDiagram) -> FramedLinkDiagram:
    return FramedLinkDiagram(mirror_pd(d.pd), tuple(-f for f in d.framings), d.colors)


def writhe(d: FramedLinkDiagram | PDCode) -> int:
    pd = d.pd if isinstance(d, FramedLinkDiagram) else d
    return sum(crossing_signs(pd))


def self_writhes(pd: PDCode) -> tuple[int, ...]:
    """Sum of signs of each component's self-crossings (its blackboard framing)."""
    comp_of = pd.arc_component()
    out = [0] * pd.n_components
    for (a, b, c, d), s in zip(pd.crossings, crossing_signs(pd)):
        if comp_of[a] == comp_of[b]:
            out[comp_of[a]] += s
    return tuple(out)


def linking_matrix(d: FramedLinkDiagram) -> list[list[int]]:
    pd = d.pd
    comp_of = pd.arc_component()
    n = pd.n_components
    twice = [[0] * n for _ in range(n)]
    for (a, b, c, dd), s in zip(pd.crossings, crossing_signs(pd)):
        i, j = comp_of[a], comp_of[b]
        if i != j:
            twice[i][j] += s
            twice[j][i] += s
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                m[i][j] = d.framings[i]
            else:
                if twice[i][j] % 2:
                    raise MalformedDiagram(f"odd mixed crossing sum between components {i} and {j}")
                m[i][j] = twice[i][j] // 2
    return m


# ---------------------------------------------------------------------------
# exact linear algebra


def signature_exact(m: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix by congruence diagonalization over Q."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    size = n
    while size:
        k = next((i for i in range(size) if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
            for t in range(size):
                a[i][t] += a[j][t]
            for t in range(size):
                a[t][i] += a[t][j]
            k = i
        # move pivot to the end and eliminate
        last = size - 1
        a[k], a[last] = a[last], a[k]
        for row in a:
            row[k], row[last] = row[last], row[k]
        piv = a[last][last]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(last):
            f = a[i][last] / piv
            if f:
                for j in range(last):
                    a[i][j] -= f * a[last][j]
        size = last
    return pos - neg


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# building diagrams from generically labelled oriented crossings


def normalize(crossings: Iterable[tuple[Hashable, Hashable, Hashable, Hashable, bool]],
              starts: Sequence[Hashable]) -> PDCode:
    """Relabel oriented crossings with arbitrary hashable arc labels into a PDCode.

    ``crossings`` are ``(a, b, c, d, positive)``; ``starts`` holds one arc per
    component (in the desired component order).  Each component is traced from
    its start, then rotated so that its first arc is the one entering the
    lowest-indexed crossing it visits; this keeps the orientation of one- and
    two-arc components recoverable from the labels.
    """
    crossings = list(crossings)
    nxt: dict[Hashable, Hashable] = {}
    first_visit: dict[Hashable, int] = {}
    for i, (a, b, c, d, pos) in enumerate(crossings):
        o_in, o_out = (d, b) if pos else (b, d)
        for x_in, x_out in ((a, c), (o_in, o_out)):
            if x_in in nxt:
                raise MalformedDiagram(f"arc {x_in!r} enters two crossings")
            nxt[x_in] = x_out
            first_visit.setdefault(x_in, i)
    label: dict[Hashable, int] = {}
    components = []
    counter = 1
    for s in starts:
        if s in label:
            raise MalformedDiagram(f"component start {s!r} already traced")
        if s not in nxt:
            label[s] = counter
            components.append((counter,))
            counter += 1
            continue
        cycle = [s]
        x = nxt[s]
        while x != s:
            if x in label or len(cycle) > len(nxt):
                raise MalformedDiagram("component trace does not close up")
            cycle.append(x)
            x = nxt[x]
        k = min(range(len(cycle)), key=lambda t: first_visit[cycle[t]])
        cycle = cycle[k:] + cycle[:k]
        comp = []
        for x in cycle:
            label[x] = counter
            comp.append(counter)
            counter += 1
        components.append(tuple(comp))
    if len(label) != len(set(nxt) | {s for s in starts}):
        raise MalformedDiagram("some arcs belong to no traced component")
    pd = PDCode(tuple((label[a], label[b], label[c], label[d]) for a, b, c, d, _ in crossings),
                tuple(components))
    derived = _orient(pd)
    if derived != tuple(bool(x[4]) for x in crossings):
        raise AssertionError("relabelled code does not reproduce crossing signs")
    return pd


def _oriented(pd: PDCode) -> list[tuple[int, int, int, int, bool]]:
    return [(a, b, c, d, s) for (a, b, c, d), s in zip(pd.crossings, _orient(pd))]


def braid_closure(word: Sequence[int], strands: int | None = None) -> PDCode:
    """PD code of the closure of a braid word (``k`` = sigma_k, ``-k`` its inverse).

    Strands run upward; sigma_k is the positive crossing of strands k, k+1.
    """
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    if any(g == 0 or abs(g) >= strands for g in word):
        raise ValueError("generator index out of range")
    fresh = itertools.count(strands + 1)
    bottom = list(range(1, strands + 1))
    cur = list(bottom)
    raw = []
    for g in word:
        i = abs(g) - 1
        left_in, right_in = cur[i], cur[i + 1]
        left_out, right_out = next(fresh), next(fresh)
        if g > 0:
            # over: SW -> NE; under: SE -> NW
            raw.append((right_in, right_out, left_out, left_in, True))
        else:
            # over: SE -> NW; under: SW -> NE
            raw.append((left_in, right_in, right_out, left_out, False))
        cur[i], cur[i + 1] = left_out, right_out
    # close up: top label on strand j is identified with bottom label j
    sub = {top: bot for top, bot in zip(cur, bottom) if top != bot}
    crossings = [tuple(sub.get(x, x) for x in c[:4]) + (c[4],) for c in raw]
    # each cycle of the closure permutation is one component
    perm = list(range(strands))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, starts = set(), []
    for j in range(strands):
        if j in seen:
            continue
        starts.append(bottom[j])
        k = j
        while k not in seen:
            seen.add(k)
            k = perm.index(k)
    return normalize(crossings, starts)


# ---------------------------------------------------------------------------
# cabling and bookkeeping


def cable_pd(pd: PDCode, component: int, m: int) -> PDCode:
    """Replace one component by m blackboard-parallel copies.

    Every crossing of the chosen component with another strand becomes an
    m x 1 grid, and each self-crossing an m x m grid.  Copy t runs at offset t
    to the right of the original strand's direction; copies take the
    component's place in the component list.
    """
    if m < 0:
        raise ValueError("cable multiplicity must be nonnegative")
    if not 0 <= component < pd.n_components:
        raise IndexError(f"no component {component}")
    if m == 1:
        return pd
    comp_of = pd.arc_component()
    oriented = _oriented(pd)
    if m == 0:
        return _delete_component(pd, component, comp_of, oriented)

    def port(arc, t):
        return (arc, t) if comp_of[arc] == component else (arc, 0)

    out = []
    for idx, (a, b, c, d, pos) in enumerate(oriented):
        mv = m if comp_of[a] == component else 1
        mh = m if comp_of[b] == component else 1

        def v(tv, r):
            if r == 0:
                return port(a, tv)
            if r == mh:
                return port(c, tv)
            return ("v", idx, tv, r)

        def h(th, col):
            if col == 0:
                return port(d, th)
            if col == mv:
                return port(b, th)
            return ("h", idx, th, col)

        for r in range(mh):
            th = mh - 1 - r if pos else r
            for col in range(mv):
                out.append((v(col, r), h(th, col + 1), v(col, r + 1), h(th, col), pos))
    starts = []
    for ci, comp in enumerate(pd.components):
        if ci == component:
            starts.extend((comp[0], t) for t in range(m))
        else:
            starts.append((comp[0], 0))
    return normalize(out, starts)


def _delete_component(pd, component, comp_of, oriented) -> PDCode:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    kept = []
    for a, b, c, d, pos in oriented:
        under_gone = comp_of[a] == component
        over_gone = comp_of[b] == component
        if under_gone and over_gone:
            continue
        if under_gone:
            o_in, o_out = (d, b) if pos else (b, d)
            parent[find(o_out)] = find(o_in)
        elif over_gone:
            parent[find(c)] = find(a)
        else:
            kept.append((a, b, c, d, pos))
    kept = [tuple(find(x) for x in k[:4]) + (k[4],) for k in kept]
    starts = [find(comp[0]) for ci, comp in enumerate(pd.components) if ci != component]
    return normalize(kept, starts)


def cable(d: FramedLinkDiagram, component: int, m: int) -> FramedLinkDiagram:
    """Cable one component of a framed diagram; copies inherit framing and color."""
    pd = cable_pd(d.pd, component, m)
    framings = d.framings[:component] + (d.framings[component],) * m + d.framings[component + 1:]
    colors = None
    if d.colors is not None:
        colors = d.colors[:component] + (d.colors[component],) * m + d.colors[component + 1:]
    return FramedLinkDiagram(pd, framings, colors)


def cable_multi(pd: PDCode, multiplicities: Sequence[int]) -> PDCode:
    """Cable every component by its own multiplicity."""
    if len(multiplicities) != pd.n_components:
        raise ValueError("one multiplicity per component required")
    # process from the last component so earlier indices stay valid
    for ci in range(pd.n_components - 1, -1, -1):
        pd = cable_pd(pd, ci, multiplicities[ci])
    return pd


def cabled_crossing_count(pd: PDCode, multiplicities: Sequence[int]) -> int:
    comp_of = pd.arc_component()
    return sum(multiplicities[comp_of[a]] * multiplicities[comp_of[b]] for a, b, _, _ in pd.crossings)


def add_disjoint_unknot(d: FramedLinkDiagram, framing: int, color: int | None = None) -> FramedLinkDiagram:
    """Append a crossingless circle; existing arc labels are untouched."""
    used = [x for comp in d.pd.components for x in comp]
    label = max(used, default=0) + 1
    pd = PDCode(d.pd.crossings, d.pd.components + ((label,),))
    colors = None
    if d.colors is not None or color is not None:
        colors = tuple(d.colors or (None,) * d.pd.n_components) + (color,)
    return FramedLinkDiagram(pd, d.framings + (framing,), colors)


def disjoint_union(d1: FramedLinkDiagram, d2: FramedLinkDiagram) -> FramedLinkDiagram:
    shift = max((x for comp in d1.pd.components for x in comp), default=0)
    pd = PDCode(
        d1.pd.crossings + tuple(tuple(x + shift for x in c) for c in d2.pd.crossings),
        d1.pd.components + tuple(tuple(x + shift for x in c) for c in d2.pd.components),
    )
    colors = None
    if d1.colors is not None or d2.colors is not None:
        colors = (d1.colors or (None,) * d1.pd.n_components) + (d2.colors or (None,) * d2.pd.n_components)
    return FramedLinkDiagram(pd, d1.framings + d2.framings, colors)


# ---------------------------------------------------------------------------
# a few standard diagrams


def unknot(framing: int = 0) -> FramedLinkDiagram:
    return FramedLinkDiagram(PDCode((), ((1,),)), (framing,))


def unlink(n: int) -> FramedLinkDiagram:
    return FramedLinkDiagram(PDCode((), tuple((i + 1,) for i in range(n))), (0,) * n)


def torus_link(n: int, framing: int | None = None) -> FramedLinkDiagram:
    """The (2, |n|) torus link as the closure of sigma_1^n.

    n > 0 gives the right-handed (all positive crossings) version.  When
    ``framing`` is given, every component receives it.
    """
    if n == 0:
        return unlink(2)
    pd = braid_closure([1 if n > 0 else -1] * abs(n), 2)
    f = 0 if framing is None else framing
    return FramedLinkDiagram(pd, (f,) * pd.n_components)


def trefoil(right_handed: bool = True, framing: int = 0) -> FramedLinkDiagram:
    return torus_link(3 if right_handed else -3, framing)


def figure_eight() -> FramedLinkDiagram:
    return FramedLinkDiagram(braid_closure([1, -2, 1, -2], 3), (0,))
