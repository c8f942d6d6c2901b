"""Modular homomorphic images of cyclotomic values.

Ranks and linear solves over Q(zeta_N) are accelerated by mapping into a
prime field F_q with q = 1 (mod N): zeta_N goes to a fixed element of order
N, so the map is a ring homomorphism on every value whose denominator is
prime to q.  A full modular rank certifies the exact rank from below (rank
can only drop under reduction), which is the only direction the callers
rely on; exact arithmetic remains the authority everywhere else.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .cyclo import CycloNum

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class BadPrime(Exception):
    """A denominator collided with the working prime; retry with the next."""


@lru_cache(maxsize=None)
def _context_chain(n_mod: int, floor: int) -> tuple[int, int]:
    """Smallest prime q = 1 (mod n_mod) with q > floor, and a root of order n_mod."""
    k = floor // n_mod + 1
    while True:
        q = k * n_mod + 1
        if q > floor and _is_prime(q):
            root = _element_of_order(q, n_mod)
            if root is not None:
                return q, root
        k += 1


def _element_of_order(q: int, n: int) -> int | None:
    for g in range(2, 200):
        x = pow(g, (q - 1) // n, q)
        if x == 1:
            continue
        ok = True
        for p in {p for p, _, _ in _factorize(n)}:
            if pow(x, n // p, q) == 1:
                ok = False
                break
        if ok:
            return x
    return None  # pragma: no cover


def _factorize(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            out.append((p, v, p**v))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1, n))
    return out


class ModContext:
    """Reduction of Q(zeta_N)-values into F_q for a fixed N."""

    def __init__(self, n_mod: int, floor: int = 1_000_003):
        self.n_mod = n_mod
        self.q, self.zeta = _context_chain(n_mod, floor)
        self._powers: dict[int, int] = {}

    def next_context(self) -> "ModContext":
        return ModContext(self.n_mod, self.q)

    def _zeta_pow(self, e: int) -> int:
        got = self._powers.get(e)
        if got is None:
            got = pow(self.zeta, e, self.q)
            self._powers[e] = got
        return got

    def reduce(self, x: CycloNum) -> int:
        if self.n_mod % x.n:
            raise ValueError(f"conductor {x.n} does not divide context modulus {self.n_mod}")
        scale = self.n_mod // x.n
        q = self.q
        total = 0
        for e, c in x.coeffs.items():
            den = c.denominator % q
            if den == 0:
                raise BadPrime
            val = c.numerator % q * pow(den, q - 2, q) % q
            total = (total + val * self._zeta_pow(e * scale)) % q
        return total

    def reduce_vec(self, xs) -> list[int]:
        return [self.reduce(x) for x in xs]


def conductor_lcm(values) -> int:
    n = 1
    for v in values:
        n = n * v.n // gcd(n, v.n)
    return n


class ModSpan:
    """Incrementally maintained row space over F_q (echelon, normalized pivots)."""

    def __init__(self, ncols: int, q: int):
        self.ncols = ncols
        self.q = q
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def add(self, vec: list[int]) -> bool:
        q = self.q
        vec = [v % q for v in vec]
        for row, p in zip(self.rows, self.pivots):
            f = vec[p]
            if f:
                vec = [(a - f * b) % q for a, b in zip(vec, row)]
        for c in range(self.ncols):
            if vec[c]:
                inv = pow(vec[c], q - 2, q)
                vec = [v * inv % q for v in vec]
                self.rows.append(vec)
                self.pivots.append(c)
                return True
        return False


def mod_solve(matrix: list[list[int]], rhs: list[int], q: int) -> list[int] | None:
    """Solve matrix @ x = rhs over F_q; None if inconsistent.

    Requires the matrix to have full column rank for the answer to be the
    unique solution; callers guarantee that.
    """
    rows = [list(r) + [b % q] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % q:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], q - 2, q)
        rows[r] = [v * inv % q for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    x = [0] * ncols
    for row in rows[r:]:
        if row[-1] % q:
            return None
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x
