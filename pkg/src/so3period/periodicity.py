"""
Congruence criteria that certify non-periodicity, and the batch experiments
over Brieskorn spheres.

Every criterion here is a necessary condition: a ``fail`` verdict proves the
link or manifold is not p-periodic, a ``pass`` proves nothing.
"""

from __future__ import annotations

import concurrent.futures as cf
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .bracket import bracket, jones
from .cyclotomic import CycloElem, LaurentPoly, galois_conj, mod_p_reduce
from .diagram import FramedLinkDiagram, writhe
from .so3 import InvariantValue, brieskorn_invariant, is_odd_prime, so3_context

PASS_NOTE = "inconclusive (necessary condition satisfied)"

GRID_PRIMES = (5, 7, 11, 13, 17, 19)
GRID_NS = tuple(s * n for n in range(3, 20, 2) for s in (1, -1))


@dataclass(frozen=True)
class PeriodicityReport:
    criterion: Literal["jones", "bracket", "bracket_framed", "manifold"]
    p: int
    difference: dict[int, int]
    verdict: Literal["pass", "fail"]
    passing_phases: tuple[int, ...] = ()
    degenerate: bool = False
    invariant: dict[int, object] = field(default_factory=dict)
    ring: str = ""

    @property
    def note(self) -> str:
        if self.verdict == "pass":
            extra = "; invariant vanishes mod p, every phase passes" if self.degenerate else ""
            return PASS_NOTE + extra
        return f"not {self.p}-periodic"


def _residue(poly: LaurentPoly, p: int, period: int) -> dict[int, int]:
    return dict(poly.reduce_mod(p, period).items())


def jones_periodicity_test(d: FramedLinkDiagram, p: int, max_crossings: int | None = None) -> PeriodicityReport:
    """V(t) - V(t^-1) in (Z/p)[s]/(s^2p - 1), where s^2 = t."""
    v = jones(d, max_crossings)
    diff = _residue(v - v.invert_variable(), p, 2 * p)
    return PeriodicityReport("jones", p, diff, "fail" if diff else "pass",
                             invariant=dict(v.items()), ring=f"F{p}[s]/(s^{2 * p}-1), t=s^2")


def bracket_periodicity_test(d: FramedLinkDiagram, p: int,
                             mode: Literal["with_writhe", "framed"] = "with_writhe",
                             max_crossings: int | None = None) -> PeriodicityReport:
    """<L> - A^(6w) <L>(A^-1) mod (p, A^4p - 1), or <L> - <L>(A^-1) mod (p, A^2p - 1).

    The framed mode only carries meaning when the writhe is divisible by p.
    """
    b = bracket(d.pd, max_crossings)
    if mode == "with_writhe":
        w = writhe(d)
        diff = _residue(b - b.invert_variable().shift(6 * w), p, 4 * p)
        ring, crit = f"F{p}[A]/(A^{4 * p}-1)", "bracket"
    elif mode == "framed":
        diff = _residue(b - b.invert_variable(), p, 2 * p)
        ring, crit = f"F{p}[A]/(A^{2 * p}-1)", "bracket_framed"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return PeriodicityReport(crit, p, diff, "fail" if diff else "pass",
                             invariant=dict(b.items()), ring=ring)


def manifold_periodicity_test(inv: InvariantValue | CycloElem, p: int | None = None) -> PeriodicityReport:
    """Search j in 0..p-1 with I = A^2j conj(I) in (Z/p)[A]/Phi_2p."""
    value = inv.value if isinstance(inv, InvariantValue) else inv
    if p is None:
        p = inv.p if isinstance(inv, InvariantValue) else value.ring.N // 2
    if value.ring.N != 2 * p:
        raise ValueError(f"invariant must live in Z[A]/Phi_{2 * p}")
    if not value.is_integral():
        raise ValueError("invariant must have integer coefficients")
    ring_p = mod_p_reduce(value, p).ring
    red = mod_p_reduce(value, p)
    conj = galois_conj(red)
    degenerate = red.is_zero()
    passing, first_diff = [], None
    for j in range(p):
        diff = red - ring_p.monomial(2 * j) * conj
        if diff.is_zero():
            passing.append(j)
        elif first_diff is None:
            first_diff = diff
    difference = {} if passing else first_diff.terms()
    return PeriodicityReport("manifold", p, difference, "pass" if passing else "fail",
                             tuple(passing), degenerate, value.terms(), f"Z[A]/Phi_{{{2 * p}}}")


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class GridCell:
    n: int
    p: int
    invariant: tuple[int, ...]
    passing_phases: tuple[int, ...]
    divisible: bool

    @property
    def verdict(self) -> str:
        return "pass" if self.passing_phases else "fail"


@dataclass(frozen=True)
class GridResult:
    cells: tuple[GridCell, ...]

    @property
    def total(self) -> int:
        return len(self.cells)

    @property
    def passes(self) -> list[GridCell]:
        return [c for c in self.cells if c.passing_phases]

    @property
    def divisible_passes(self) -> list[GridCell]:
        return [c for c in self.passes if c.divisible]

    @property
    def divisible_cells(self) -> list[GridCell]:
        return [c for c in self.cells if c.divisible]

    @property
    def exceptional(self) -> list[tuple[int, int]]:
        return [(c.n, c.p) for c in self.passes if not c.divisible]

    def summary(self) -> dict[str, int]:
        return {"total": self.total, "passing": len(self.passes),
                "divisible_passing": len(self.divisible_passes), "exceptional": len(self.exceptional)}


def _sort_key(n: int, p: int) -> tuple[int, int, int]:
    return (abs(n), 0 if n > 0 else 1, p)


def grid_cell(n: int, p: int) -> GridCell:
    inv = brieskorn_invariant(n, so3_context(p))
    report = manifold_periodicity_test(inv)
    divisible = n % p == 0 or (2 * n - 1) % p == 0
    return GridCell(n, p, inv.value.coeffs, report.passing_phases, divisible)


def _cell_args(args):
    return grid_cell(*args)


def grid_experiment(primes: Sequence[int] = GRID_PRIMES, ns: Sequence[int] = GRID_NS,
                    jobs: int = 1) -> GridResult:
    """Manifold criterion on every (n, p), sorted by (|n|, sign, p)."""
    pairs = sorted(((n, p) for n in ns for p in primes), key=lambda t: _sort_key(*t))
    if jobs > 1:
        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell_args, pairs))
    else:
        cells = [grid_cell(n, p) for n, p in pairs]
    return GridResult(tuple(cells))


def primes_between(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 3), hi + 1) if is_odd_prime(q)]


def poincare_scan(primes: Iterable[int], jobs: int = 1) -> list[tuple[int, PeriodicityReport]]:
    """Manifold criterion for the Poincare sphere (n = 3) at each prime."""
    primes = sorted(primes)
    if jobs > 1:
        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell_args, [(3, q) for q in primes]))
    else:
        cells = [grid_cell(3, q) for q in primes]
    out = []
    for q, cell in zip(primes, cells):
        ring = so3_context(q).ring2p
        out.append((q, manifold_periodicity_test(CycloElem(ring, cell.invariant), q)))
    return out
