"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored at a conductor n (n = 1, or n >= 3 with n not congruent
to 2 mod 4) as a sparse map from basis exponents e to rational coefficients,
meaning sum_e q_e * zeta_n^e.  The basis is a tower basis compatible with the
prime factorization of n: writing e via CRT as local exponents j_p, the
exponent e is a basis exponent iff for every odd prime p (with p^v || n) the
top base-p digit of j_p is nonzero, and for p = 2 the top digit of j_2 is
zero.  This keeps rewrite rules local to one prime (sparse values stay
sparse) and makes descent to subfields a support condition.

Values are always canonical: basis exponents only, no zero coefficients,
minimal conductor.  Equality of canonical forms is exact field equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class CycloError(ArithmeticError):
    """Arithmetic failure in the cyclotomic layer."""


class InvalidConductorError(CycloError):
    """A conductor that is not a positive integer."""


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int, int], ...]:
    """Prime factorization of n as (p, v, p**v) triples."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            v = 0
            while m % p == 0:
                m //= p
                v += 1
            out.append((p, v, p**v))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1, m))
    return tuple(out)


@lru_cache(maxsize=None)
def _prime_data(n: int) -> tuple[tuple[int, int, int, int, int], ...]:
    """Per-prime rewrite data for conductor n.

    Each entry is (p, pk, inv, top, step) where pk = p^v, inv is the inverse
    of n/pk mod pk, top = p^(v-1) (the top-digit unit), and step = n // p.
    """
    out = []
    for p, v, pk in _factor(n):
        inv = pow(n // pk, -1, pk)
        out.append((p, pk, inv, p ** (v - 1), n // p))
    return tuple(out)


def _is_basis_exp(n: int, e: int) -> bool:
    for p, pk, inv, top, step in _prime_data(n):
        j = (e % pk) * inv % pk
        if (j < top) if p != 2 else (j >= top):
            return False
    return True


@lru_cache(maxsize=500000)
def _basis_expansion(n: int, e: int) -> tuple[tuple[int, int], ...]:
    """Expansion of zeta_n^e over basis exponents, as ((exponent, sign), ...)."""
    terms = {e: 1}
    for p, pk, inv, top, step in _prime_data(n):
        bad = [ee for ee in terms if ((ee % pk) * inv % pk < top) == (p != 2)]
        for ee in bad:
            s = terms.pop(ee)
            if p == 2:
                e2 = (ee + step) % n
                terms[e2] = terms.get(e2, 0) - s
            else:
                for t in range(1, p):
                    e2 = (ee + t * step) % n
                    terms[e2] = terms.get(e2, 0) - s
    return tuple(terms.items())


def _reduce(n: int, terms: dict[int, Fraction]) -> dict[int, Fraction]:
    """Rewrite arbitrary exponents into basis exponents at conductor n."""
    if n == 1:
        q = sum(terms.values(), Fraction(0))
        return {0: q} if q else {}
    out: dict[int, Fraction] = {}
    for e, c in terms.items():
        if not c:
            continue
        e %= n
        if _is_basis_exp(n, e):
            out[e] = out.get(e, _F0) + c
        else:
            for e2, s in _basis_expansion(n, e):
                out[e2] = out.get(e2, _F0) + (c if s == 1 else -c if s == -1 else s * c)
    return {e: c for e, c in out.items() if c}


def _from_two_mod_four(n: int, terms: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Convert a representation at n = 2 mod 4 down to conductor n/2."""
    m = n // 2
    half = (m + 1) // 2
    out: dict[int, Fraction] = {}
    for e, c in terms.items():
        e2 = e * half % m
        if e % 2:
            c = -c
        out[e2] = out.get(e2, Fraction(0)) + c
    return m, {e: c for e, c in out.items() if c}


def _descend(n: int, terms: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Lower the conductor while the value lies in a proper cyclotomic subfield."""
    while n > 1:
        if not terms:
            return 1, {}
        for p, v, pk in _factor(n):
            if v >= 2:
                if all(e % p == 0 for e in terms):
                    n //= p
                    terms = {e // p: c for e, c in terms.items()}
                    if n % 4 == 2:
                        n, terms = _from_two_mod_four(n, terms)
                    break
            else:
                m = n // pk
                # e = alpha*p*(rest part) + beta*m*(p part) via 1 = alpha*p + beta*m
                beta = pow(m, -1, p) if p > 1 else 0
                alpha = pow(p, -1, m) if m > 1 else 0
                slices: dict[int, dict[int, Fraction]] = {}
                for e, c in terms.items():
                    r = e * alpha % m if m > 1 else 0
                    j = e * beta % p
                    slices.setdefault(r, {})[j] = c
                ok = True
                for parts in slices.values():
                    if len(parts) != p - 1 or len(set(parts.values())) != 1:
                        ok = False
                        break
                if ok:
                    terms = {r: -parts[1] for r, parts in slices.items()}
                    n = m
                    if n % 4 == 2:
                        n, terms = _from_two_mod_four(n, terms)
                    break
        else:
            break
    if n == 1 and 0 in terms and not terms[0]:
        terms = {}
    return n, terms


def _lift(terms: dict[int, Fraction], n: int, big: int) -> dict[int, Fraction]:
    k = big // n
    return terms if k == 1 else {e * k: c for e, c in terms.items()}


class Accumulator:
    """Sum many values at a common conductor, canonicalizing once at the end.

    Repeated CycloNum additions re-canonicalize на every step; hot paths
    (matrix products, polynomial evaluation) instead merge raw term dicts
    here and pay for reduction and descent a single time.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int):
        self.n = n
        self.terms: dict[int, Fraction] = {}

    def add(self, x: "CycloNum"):
        k = self.n // x.n
        t = self.terms
        if k == 1:
            for e, c in x.coeffs.items():
                t[e] = t.get(e, _F0) + c
        else:
            for e, c in x.coeffs.items():
                ek = e * k
                t[ek] = t.get(ek, _F0) + c

    def add_product(self, x: "CycloNum", y: "CycloNum"):
        """Accumulate x*y without canonicalizing the product."""
        if not x.coeffs or not y.coeffs:
            return
        n = self.n
        kx = n // x.n
        ky = n // y.n
        t = self.terms
        for e1, c1 in x.coeffs.items():
            e1k = e1 * kx
            for e2, c2 in y.coeffs.items():
                e = (e1k + e2 * ky) % n
                t[e] = t.get(e, _F0) + c1 * c2

    def finish(self) -> "CycloNum":
        return CycloNum(self.n, self.terms)


_F0 = Fraction(0)


def common_conductor(values) -> int:
    n = 1
    for v in values:
        n = n * v.n // gcd(n, v.n)
    return n


class CycloNum:
    """An exact element of a cyclotomic field, immutable and canonical."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict[int, Fraction], *, _canonical: bool = False):
        if not _canonical:
            if n % 4 == 2:
                n, coeffs = _from_two_mod_four(n, _reduce(n, dict(coeffs)))
            coeffs = _reduce(n, dict(coeffs))
            n, coeffs = _descend(n, coeffs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CycloNum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q) -> CycloNum:
        q = Fraction(q)
        return CycloNum(1, {0: q} if q else {}, _canonical=True)

    @staticmethod
    def zero() -> CycloNum:
        return _ZERO

    @staticmethod
    def one() -> CycloNum:
        return _ONE

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> CycloNum:
        """The canonical form of zeta_n^k, zeta_n = exp(2*pi*i/n)."""
        if n < 1:
            raise InvalidConductorError(f"conductor must be >= 1, got {n}")
        k %= n
        g = gcd(n, k) if k else n
        n, k = n // g, k // g
        if n == 1:
            return _ONE
        if n == 2:
            return CycloNum.from_rational(-1)
        return CycloNum(n, {k: Fraction(1)})

    # -- coercion ------------------------------------------------------

    @staticmethod
    def _coerce(x) -> CycloNum:
        if isinstance(x, CycloNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloNum.from_rational(x)
        return NotImplemented

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.n == 1

    def as_rational(self) -> Fraction:
        if self.n != 1:
            raise CycloError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def is_one(self) -> bool:
        return self.n == 1 and self.coeffs.get(0) == 1

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> CycloNum:
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        big = self.n * other.n // gcd(self.n, other.n)
        a = _lift(self.coeffs, self.n, big)
        b = _lift(other.coeffs, other.n, big)
        merged = dict(a)
        for e, c in b.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return CycloNum(big, merged)

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum(self.n, {e: -c for e, c in self.coeffs.items()}, _canonical=True)

    def __sub__(self, other) -> CycloNum:
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycloNum:
        return (-self) + other

    def __mul__(self, other) -> CycloNum:
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return _ZERO
        big = self.n * other.n // gcd(self.n, other.n)
        a = _lift(self.coeffs, self.n, big)
        b = _lift(other.coeffs, other.n, big)
        out: dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % big
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CycloNum(big, out)

    __rmul__ = __mul__

    def invert(self) -> CycloNum:
        """Exact multiplicative inverse."""
        if not self.coeffs:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.n == 1:
            return CycloNum.from_rational(1 / self.coeffs[0])
        if len(self.coeffs) == 1:
            (e, c), = self.coeffs.items()
            return CycloNum(self.n, {(-e) % self.n: 1 / c})
        # Multiply the Galois conjugates; the full product is rational.
        prod = _ONE
        for t in range(2, self.n):
            if gcd(t, self.n) == 1:
                prod = prod * CycloNum(self.n, {e * t % self.n: c for e, c in self.coeffs.items()})
        norm = self * prod
        if norm.n != 1:
            raise CycloError("norm computation failed")  # pragma: no cover
        return prod * CycloNum.from_rational(1 / norm.coeffs[0])

    def __truediv__(self, other) -> CycloNum:
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other) -> CycloNum:
        return CycloNum._coerce(other) * self.invert()

    def __pow__(self, k: int) -> CycloNum:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        other = CycloNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.coeffs.items())))

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
                continue
            root = f"E({self.n})" if e == 1 else f"E({self.n})^{e}"
            if c == 1:
                parts.append(root)
            elif c == -1:
                parts.append("-" + root)
            else:
                parts.append(f"{c}*{root}")
        out = parts[0]
        for part in parts[1:]:
            out += part if part.startswith("-") else "+" + part
        return out

    def __repr__(self) -> str:
        return f"CycloNum({self})"


_ZERO = CycloNum(1, {}, _canonical=True)
_ONE = CycloNum(1, {0: Fraction(1)}, _canonical=True)


def canonical_equal(x: CycloNum, y: CycloNum) -> bool:
    """True iff x - y = 0 exactly, across differing conductors."""
    return (x - y).is_zero()
