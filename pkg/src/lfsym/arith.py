"""Exact integer and character-theoretic primitives.

Provides the prime sieve, Kronecker symbols, integer factorization and
Dirichlet character tables (prime modulus) shared by the rest of the
package.  Everything here is exact: character values are stored as
root-of-unity indices so that orthogonality sums cancel without floating
tolerance creep.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PrimeTable",
    "sieve_primes",
    "is_prime",
    "factorize",
    "squarefree_part",
    "kronecker_symbol",
    "legendre_table",
    "primitive_root",
    "DirichletCharacter",
    "characters_mod",
]


# ---------------------------------------------------------------------------
# Primes


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` with cached natural logs.

    Attributes:
        limit: Inclusive sieving bound.
        primes: Ascending int64 array of primes <= limit.
        log_p: float64 array, log_p[i] = log(primes[i]).
    """

    limit: int
    primes: np.ndarray
    log_p: np.ndarray

    def up_to(self, bound: int) -> np.ndarray:
        """Primes <= bound (bound must not exceed the sieved limit)."""
        if bound > self.limit:
            raise ValueError(f"bound {bound} exceeds sieved limit {self.limit}")
        return self.primes[self.primes <= bound]

    def __len__(self) -> int:
        return len(self.primes)


def sieve_primes(limit: int) -> PrimeTable:
    """Plain Eratosthenes sieve.

    Args:
        limit: Inclusive upper bound, must be >= 2.

    Returns:
        PrimeTable with all primes <= limit.

    Raises:
        ValueError: If limit < 2.
    """
    if limit < 2:
        raise ValueError("sieve limit must be at least 2")
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    primes = np.nonzero(mask)[0].astype(np.int64)
    return PrimeTable(limit=limit, primes=primes, log_p=np.log(primes.astype(float)))


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (valid for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # This witness set is deterministic far beyond 64-bit inputs.
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


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite, odd, non-prime-power n."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


_TRIAL_PRIMES: list[int] = []


def _trial_primes() -> list[int]:
    if not _TRIAL_PRIMES:
        _TRIAL_PRIMES.extend(int(p) for p in sieve_primes(10_000).primes)
    return _TRIAL_PRIMES


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Trial division by small primes, then Miller-Rabin plus Pollard rho on
    the remaining cofactor.

    Raises:
        ValueError: If n == 0.
    """
    if n == 0:
        raise ValueError("cannot factorize 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor of |n| (1 for n = +-1)."""
    return math.prod(factorize(n)) if abs(n) != 1 else 1


# ---------------------------------------------------------------------------
# Quadratic symbols


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the fully multiplicative extension of the
    Legendre symbol to all nonzero integers n.

    Raises:
        ValueError: If n == 0.
    """
    if n == 0:
        raise ValueError("Kronecker symbol undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out twos from n; (a|2) depends on a mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    # now n is odd and positive: Jacobi symbol with reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_table(p: int) -> np.ndarray:
    """int64 array chi of length p with chi[u] = (u|p) for an odd prime p."""
    if p == 2:
        # (0|2) = 0, (1|2) = 1
        return np.array([0, 1], dtype=np.int64)
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def kronecker_table_two(values: np.ndarray) -> np.ndarray:
    """(d|2) for an int64 array of d, via d mod 8."""
    r = np.mod(values, 8)
    out = np.zeros(values.shape, dtype=np.int64)
    out[(r == 1) | (r == 7)] = 1
    out[(r == 3) | (r == 5)] = -1
    return out


# ---------------------------------------------------------------------------
# Dirichlet characters for prime modulus


def primitive_root(m: int) -> int:
    """Smallest primitive root modulo a prime m >= 3."""
    phi = m - 1
    prime_divisors = list(factorize(phi))
    for g in range(2, m):
        if all(pow(g, phi // q, m) != 1 for q in prime_divisors):
            return g
    raise ValueError(f"{m} has no primitive root (not prime?)")


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character modulo a prime m.

    Values are exact roots of unity e^(2*pi*i*k/e) with e = m - 1 the group
    exponent; ``value_index[a]`` stores k for gcd(a, m) = 1 and -1 where the
    character vanishes.  ``values`` is the complex rendering.

    Attributes:
        modulus: The (prime) modulus m.
        index: Which character: chi_j(g) = zeta_e^j for the primitive root g.
        order: Multiplicative order of the character.
        value_index: int64 array of length m (root-of-unity exponents, -1 at 0).
        values: complex128 array of length m.
    """

    modulus: int
    index: int
    order: int
    value_index: np.ndarray
    values: np.ndarray = field(repr=False)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    def __call__(self, a: int) -> complex:
        return complex(self.values[a % self.modulus])

    def power_value(self, a: int, nu: int) -> complex:
        """chi(a)^nu, exact root of unity (0 when gcd(a, m) > 1)."""
        k = int(self.value_index[a % self.modulus])
        if k < 0:
            return 0j
        e = self.modulus - 1
        return complex(np.exp(2j * np.pi * ((k * nu) % e) / e))


def characters_mod(m: int) -> list[DirichletCharacter]:
    """All m - 1 Dirichlet characters modulo a prime m >= 3.

    Built from a primitive root g and its discrete-log table:
    chi_j(g^k) = e^(2*pi*i*j*k/(m-1)).  The trivial character is index 0.

    Raises:
        ValueError: If m < 3 or m is not prime.
    """
    if m < 3 or not is_prime(m):
        raise ValueError(f"modulus must be an odd prime, got {m}")
    g = primitive_root(m)
    e = m - 1
    dlog = np.zeros(m, dtype=np.int64)
    acc = 1
    for k in range(e):
        dlog[acc] = k
        acc = acc * g % m
    roots = np.exp(2j * np.pi * np.arange(e) / e)
    chars = []
    for j in range(e):
        idx = np.full(m, -1, dtype=np.int64)
        idx[1:] = (j * dlog[1:]) % e
        vals = np.zeros(m, dtype=np.complex128)
        vals[1:] = roots[idx[1:]]
        order = e // math.gcd(e, j)
        chars.append(
            DirichletCharacter(
                modulus=m, index=j, order=order, value_index=idx, values=vals
            )
        )
    return chars
