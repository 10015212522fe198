"""
Exact arithmetic for Laurent polynomials and cyclotomic quotient rings.

Two value types live here:

* ``LaurentPoly`` -- a sparse one-variable Laurent polynomial over Z, Q or
  Z/p.  Brackets and Jones polynomials are carried in this form.
* ``CycloElem`` -- an element of Z[x]/Phi_N(x) (or of its reduction mod p),
  stored as a dense coefficient vector in the basis 1, x, ..., x^(deg-1).

Nothing in this module uses floating point except ``LaurentPoly.evaluate``,
which is a debugging aid.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .errors import NotDivisible

Coeff = Union[int, Fraction]


def _normalize_coeff(c: Coeff, modulus: int | None) -> Coeff:
    if modulus is not None:
        if isinstance(c, Fraction):
            if c.denominator % modulus == 0:
                raise ZeroDivisionError(f"denominator of {c} is not invertible mod {modulus}")
            return c.numerator * pow(c.denominator, -1, modulus) % modulus
        return c % modulus
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e * var^e``; immutable, canonical.

    Zero coefficients are never stored, so equality is plain dict equality.
    ``modulus`` (a prime, or ``None`` for characteristic zero) is carried along
    and propagated through arithmetic.

    >>> A = LaurentPoly.monomial(1)
    >>> str(-A**2 - A**-2)
    '-A^-2 - A^2'
    """

    __slots__ = ("_coeffs", "var", "modulus", "_hash")

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None, var: str = "A",
                 modulus: int | None = None):
        clean: dict[int, Coeff] = {}
        for e, c in (coeffs or {}).items():
            c = _normalize_coeff(c, modulus)
            if c != 0:
                clean[int(e)] = c
        self._coeffs = clean
        self.var = var
        self.modulus = modulus
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: Coeff = 1, var: str = "A",
                 modulus: int | None = None) -> LaurentPoly:
        return cls({exponent: coeff}, var, modulus)

    @classmethod
    def constant(cls, c: Coeff, var: str = "A", modulus: int | None = None) -> LaurentPoly:
        return cls({0: c}, var, modulus)

    # -- accessors ---------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Coeff]:
        return dict(self._coeffs)

    def items(self) -> list[tuple[int, Coeff]]:
        """Nonzero terms sorted by exponent."""
        return sorted(self._coeffs.items())

    def coeff(self, e: int) -> Coeff:
        return self._coeffs.get(e, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_exponent(self) -> int:
        return min(self._coeffs)

    def max_exponent(self) -> int:
        return max(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            if other.modulus != self.modulus:
                raise ValueError("coefficient rings differ")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.var, self.modulus)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._coeffs.items()}, self.var, self.modulus)

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()}, self.var, self.modulus)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Coeff] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.var, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._coeffs.items()
            if c not in (1, -1) and self.modulus is None:
                inv = Fraction(1, 1) / c
            else:
                inv = c if c in (1, -1) else pow(c, -1, self.modulus)
            return LaurentPoly.monomial(-e, inv, self.var, self.modulus) ** (-n)
        result = LaurentPoly.constant(1, self.var, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.var, self.modulus)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.var, self.modulus, self._coeffs) == (other.var, other.modulus, other._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.var, self.modulus, frozenset(self._coeffs.items())))
        return self._hash

    # -- transformations ---------------------------------------------------

    def map_exponents(self, f: Callable[[int], int], var: str | None = None) -> LaurentPoly:
        """Substitute ``var^e -> var'^f(e)``, summing colliding terms."""
        out: dict[int, Coeff] = {}
        for e, c in self._coeffs.items():
            e2 = f(e)
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(out, var or self.var, self.modulus)

    def invert_variable(self) -> LaurentPoly:
        """The image under var -> var^-1."""
        return self.map_exponents(lambda e: -e)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by var^k."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()}, self.var, self.modulus)

    def reduce_mod(self, p: int | None = None, period: int | None = None) -> LaurentPoly:
        """Image in (Z/p)[var]/(var^period - 1); either reduction may be skipped."""
        f = (lambda e: e % period) if period else (lambda e: e)
        out: dict[int, Coeff] = {}
        for e, c in self._coeffs.items():
            e2 = f(e)
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(out, self.var, p if p is not None else self.modulus)

    def evaluate(self, value: complex) -> complex:
        """Floating-point evaluation; for debugging only."""
        return sum(complex(c) * value ** e for e, c in self._coeffs.items())

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        return format_terms(self.items(), self.var)

    def __repr__(self) -> str:
        mod = f", mod {self.modulus}" if self.modulus else ""
        return f"LaurentPoly('{self}'{mod})"


def format_terms(terms: Iterable[tuple[object, Coeff]], var: str,
                 exponent_fmt: Callable[[object], str] = str) -> str:
    """Render ``[(exponent, coeff), ...]`` in the given order, explicit signs.

    >>> format_terms([(0, 1), (1, -2), (2, 2), (3, -1)], "A")
    '1 - 2A + 2A^2 - A^3'
    """
    parts: list[str] = []
    for e, c in terms:
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = str(mag)
        else:
            power = var if exponent_fmt(e) == "1" else f"{var}^{exponent_fmt(e)}"
            if mag == 1:
                body = power
            elif isinstance(mag, Fraction):
                body = f"({mag}){power}"
            else:
                body = f"{mag}{power}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _mobius(n: int) -> int:
    result, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    lead = den[-1]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise NotDivisible("polynomial division left a remainder")
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise NotDivisible("polynomial division left a remainder")
    return q


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the N-th cyclotomic polynomial.

    Built from the Moebius product prod_{d | N} (x^d - 1)^mu(N/d): all factors
    with mu = +1 are multiplied together and then divided exactly by those
    with mu = -1.

    >>> cyclotomic_polynomial(10)
    (1, -1, 1, -1, 1)
    """
    if N < 1:
        raise ValueError("N must be positive")
    num, den = [1], [1]
    for d in range(1, N + 1):
        if N % d:
            continue
        mu = _mobius(N // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        else:
            den = _poly_mul(den, factor)
    return tuple(_poly_exact_div(num, den))


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# quotient rings


@dataclass(frozen=True)
class CycloRing:
    """Z[x]/Phi_N(x), or (Z/char)[x]/Phi_N(x) when ``char`` is a prime.

    Use :func:`cyclotomic_ring` to get cached instances; the reduction table
    (x^e expressed in the power basis for 0 <= e < N) is built once per ring.
    """

    N: int
    char: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.char < 0 or self.char == 1:
            raise ValueError("char must be 0 or a prime")

    @functools.cached_property
    def modulus_poly(self) -> tuple[int, ...]:
        return cyclotomic_polynomial(self.N)

    @property
    def degree(self) -> int:
        return len(self.modulus_poly) - 1

    @functools.cached_property
    def _powers(self) -> tuple[tuple[int, ...], ...]:
        deg, phi = self.degree, self.modulus_poly
        table = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(self.N):
            table.append(tuple(self._reduce_coeff(c) for c in cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(deg):
                    cur[i] -= top * phi[i]
        return tuple(table)

    def _reduce_coeff(self, c: Coeff) -> Coeff:
        return _normalize_coeff(c, self.char or None)

    def power_vector(self, e: int) -> tuple[int, ...]:
        """Coefficient vector of x^e (any integer e; x^N = 1)."""
        return self._powers[e % self.N]

    # -- constructors --------------------------------------------------------

    def elem(self, coeffs: Iterable[Coeff]) -> CycloElem:
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            return self.from_poly(dict(enumerate(coeffs)))
        coeffs += [0] * (self.degree - len(coeffs))
        return CycloElem(self, tuple(self._reduce_coeff(c) for c in coeffs))

    def zero(self) -> CycloElem:
        return CycloElem(self, (0,) * self.degree)

    def one(self) -> CycloElem:
        return self.monomial(0)

    def gen(self) -> CycloElem:
        return self.monomial(1)

    def monomial(self, e: int, coeff: Coeff = 1) -> CycloElem:
        vec = self.power_vector(e)
        return CycloElem(self, tuple(self._reduce_coeff(coeff * v) for v in vec))

    def from_poly(self, terms: Mapping[int, Coeff]) -> CycloElem:
        acc: list[Coeff] = [0] * self.degree
        for e, c in terms.items():
            if not c:
                continue
            for i, v in enumerate(self.power_vector(e)):
                if v:
                    acc[i] += c * v
        return CycloElem(self, tuple(self._reduce_coeff(c) for c in acc))

    def __repr__(self) -> str:
        base = "Z" if not self.char else f"F{self.char}"
        return f"{base}[x]/Phi_{self.N}"


@functools.lru_cache(maxsize=None)
def cyclotomic_ring(N: int, char: int = 0) -> CycloRing:
    ring = CycloRing(N, char)
    if ring.degree != euler_phi(N):
        raise AssertionError(f"Phi_{N} has degree {ring.degree}, expected {euler_phi(N)}")
    return ring


class CycloElem:
    """Immutable element of a :class:`CycloRing` in the power basis."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycloRing, coeffs: tuple[Coeff, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other: CycloElem) -> None:
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other) -> CycloElem:
        if isinstance(other, (int, Fraction)):
            other = self.ring.monomial(0, other)
        self._check(other)
        r = self.ring._reduce_coeff
        return CycloElem(self.ring, tuple(r(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloElem:
        r = self.ring._reduce_coeff
        return CycloElem(self.ring, tuple(r(-a) for a in self.coeffs))

    def __sub__(self, other) -> CycloElem:
        if isinstance(other, (int, Fraction)):
            other = self.ring.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other) -> CycloElem:
        return (-self) + other

    def __mul__(self, other) -> CycloElem:
        ring = self.ring
        if isinstance(other, (int, Fraction)):
            return CycloElem(ring, tuple(ring._reduce_coeff(a * other) for a in self.coeffs))
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check(other)
        deg = ring.degree
        prod: list[Coeff] = [0] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:deg]
        for e in range(deg, 2 * deg - 1):
            c = prod[e]
            if c:
                for i, v in enumerate(ring.power_vector(e)):
                    if v:
                        out[i] += c * v
        return CycloElem(ring, tuple(ring._reduce_coeff(c) for c in out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycloElem:
        if n < 0:
            raise ValueError("negative powers are only supported for units via monomials")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.monomial(0, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) for c in self.coeffs)

    def terms(self) -> dict[int, Coeff]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def to_laurent(self, var: str = "x") -> LaurentPoly:
        return LaurentPoly(self.terms(), var, self.ring.char or None)

    def format(self, var: str = "x") -> str:
        return format_terms(sorted(self.terms().items()), var)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"CycloElem({self.ring!r}, '{self}')"


# ---------------------------------------------------------------------------
# module-level operations


def reduce(poly: LaurentPoly | Mapping[int, Coeff], ring: CycloRing) -> CycloElem:
    """Canonical representative of a Laurent polynomial in ``ring``.

    Negative exponents are cleared with x^-1 = x^(N-1).
    """
    terms = poly.coeffs if isinstance(poly, LaurentPoly) else dict(poly)
    return ring.from_poly(terms)


def galois_conj(e: CycloElem) -> CycloElem:
    """The automorphism x -> x^-1."""
    return e.ring.from_poly({-i: c for i, c in enumerate(e.coeffs) if c})


def mod_p_reduce(e: CycloElem, p: int) -> CycloElem:
    """Coefficientwise reduction into (Z/p)[x]/Phi_N."""
    target = cyclotomic_ring(e.ring.N, p)
    if e.ring.char not in (0, p):
        raise ValueError(f"cannot reduce an element of characteristic {e.ring.char} mod {p}")
    return CycloElem(target, tuple(_normalize_coeff(c, p) for c in e.coeffs))


def exact_div_int(e, d: int):
    """Divide every coefficient of ``e`` by the integer ``d`` with no remainder.

    Works on :class:`CycloElem` and :class:`LaurentPoly` with integer
    coefficients; raises :class:`NotDivisible` otherwise.
    """
    if d == 0:
        raise ZeroDivisionError("division by zero")

    def div(c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise NotDivisible(f"coefficient {c} is not an integer")
            c = c.numerator
        q, r = divmod(c, d)
        if r:
            raise NotDivisible(f"coefficient {c} is not divisible by {d}")
        return q

    if isinstance(e, CycloElem):
        if e.ring.char:
            raise ValueError("exact_div_int needs characteristic-zero input")
        return CycloElem(e.ring, tuple(div(c) for c in e.coeffs))
    if isinstance(e, LaurentPoly):
        if e.modulus:
            raise ValueError("exact_div_int needs characteristic-zero input")
        return LaurentPoly({k: div(c) for k, c in e.coeffs.items()}, e.var)
    raise TypeError(f"unsupported type {type(e).__name__}")


def even_part_to_half_ring(e: CycloElem) -> CycloElem:
    """Map an element of Z[zeta_2N] lying in Z[zeta^2] into Z[A]/Phi_N via zeta^2 = A.

    Requires 4 | 2N, i.e. N even, so that Phi_2N(x) = Phi_N(x^2) and the
    power basis splits into even and odd parts.  Raises ``ValueError`` if an
    odd power of zeta survives.
    """
    ring = e.ring
    if ring.N % 4:
        raise ValueError("source ring order must be divisible by 4")
    odd = [i for i, c in enumerate(e.coeffs) if i % 2 and c]
    if odd:
        raise ValueError(f"odd powers of zeta survive: {odd}")
    target = cyclotomic_ring(ring.N // 2, ring.char)
    return CycloElem(target, tuple(e.coeffs[0::2]))


def half_ring_to_double(e: CycloElem) -> CycloElem:
    """Inverse of :func:`even_part_to_half_ring`: A -> zeta^2."""
    ring = e.ring
    if ring.N % 2:
        raise ValueError("ring order must be even")
    target = cyclotomic_ring(2 * ring.N, ring.char)
    out: list[Coeff] = [0] * target.degree
    out[0::2] = e.coeffs
    return CycloElem(target, tuple(out))
