"""Elliptic-curve invariants, conductors and one-parameter family statistics.

Curves are short Weierstrass models y^2 = x^3 + A x + B over Q, and
one-parameter families substitute integer polynomials A(T), B(T).  Provides
exact curve invariants, a capped conductor proxy, Rankin-Selberg conductor
bounds, average log-conductors over parameter boxes, and the two family
statistics driven by counting points over F_p: the Nagao rank sum and the
second-moment sum over a complete residue system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .arith import factorize, legendre_table, sieve_primes

__all__ = [
    "CurveInvariants",
    "EllipticFamilySpec",
    "invariants",
    "conductor_proxy",
    "rs_conductor_bounds",
    "avg_log_conductor",
    "nagao_sum",
    "michel_moment",
    "j_collision_count",
    "ap_residue_table",
    "trace_of_frobenius",
    "affine_point_count",
]


@dataclass(frozen=True)
class CurveInvariants:
    """Standard invariants of y^2 = x^3 + A x + B.

    Delta = -16(4A^3 + 27B^2), c4 = -48A, c6 = -864B, and the j-invariant
    j = 6912 A^3 / (4A^3 + 27B^2) as an exact reduced rational (None when
    the curve is singular).
    """

    A: int
    B: int
    Delta: int
    c4: int
    c6: int
    j: Optional[Fraction]

    @property
    def singular(self) -> bool:
        return self.Delta == 0


def invariants(A: int, B: int) -> CurveInvariants:
    """Exact invariants of the model y^2 = x^3 + A x + B."""
    denom = 4 * A**3 + 27 * B**2
    delta = -16 * denom
    j = Fraction(6912 * A**3, denom) if denom != 0 else None
    return CurveInvariants(A=A, B=B, Delta=delta, c4=-48 * A, c6=-864 * B, j=j)


def _minimalize_ge5(A: int, B: int) -> tuple[int, int]:
    """Divide out twists (A, B) -> (A/p^4, B/p^6) at primes p >= 5."""
    if A == 0 and B == 0:
        return A, B
    if A == 0:
        cands = [p for p, e in factorize(B).items() if p >= 5 and e >= 6]
    elif B == 0:
        cands = [p for p, e in factorize(A).items() if p >= 5 and e >= 4]
    else:
        fa = factorize(A)
        cands = [p for p, e in fa.items() if p >= 5 and e >= 4 and B % p**6 == 0]
    for p in cands:
        p4, p6 = p**4, p**6
        while A % p4 == 0 and B % p6 == 0:
            A //= p4
            B //= p6
            if A == 0 or B == 0:
                break
    return A, B


def conductor_proxy(A: int, B: int) -> int:
    """Conductor proxy supported on the primes dividing the discriminant.

    After minimalizing at p >= 5, a prime p >= 5 dividing Delta contributes
    exponent 1 when p does not divide c4 (multiplicative reduction) and 2
    otherwise (additive).  Wild exponents are capped at their known maxima
    instead of running Tate's algorithm: 2^8 whenever 2 | Delta and 3^5
    whenever 3 | Delta.

    Raises:
        ValueError: If the curve is singular.
    """
    A, B = _minimalize_ge5(A, B)
    delta = -16 * (4 * A**3 + 27 * B**2)
    if delta == 0:
        raise ValueError("singular curve has no conductor")
    c4 = -48 * A
    proxy = 1
    if delta % 2 == 0:
        proxy <<= 8
    if delta % 3 == 0:
        proxy *= 3**5
    for p in factorize(delta):
        if p < 5:
            continue
        proxy *= p if c4 % p else p * p
    return proxy


def rs_conductor_bounds(C1: int, C2: int) -> tuple[int, int]:
    """Exact bounds (C1*C2)^2/g^4 <= Q <= (C1*C2)^2/g for the degree-4
    convolution conductor, with g = gcd(C1, C2)."""
    if C1 < 1 or C2 < 1:
        raise ValueError("conductors must be positive")
    g = math.gcd(C1, C2)
    sq = (C1 * C2) ** 2
    return sq // g**4, sq // g


# ---------------------------------------------------------------------------
# One-parameter families


@dataclass(frozen=True)
class EllipticFamilySpec:
    """y^2 = x^3 + A(T) x + B(T) for T in [t_min, t_max).

    Polynomials are integer coefficient tuples, lowest degree first.
    """

    a_coeffs: tuple[int, ...]
    b_coeffs: tuple[int, ...]
    t_min: int
    t_max: int

    def A(self, t: int) -> int:
        return _eval_poly(self.a_coeffs, t)

    def B(self, t: int) -> int:
        return _eval_poly(self.b_coeffs, t)

    def discriminant(self, t: int) -> int:
        return -16 * (4 * self.A(t) ** 3 + 27 * self.B(t) ** 2)

    def j_invariant(self, t: int) -> Optional[Fraction]:
        return invariants(self.A(t), self.B(t)).j

    @property
    def t_range(self) -> range:
        return range(self.t_min, self.t_max)

    def j_is_constant(self) -> bool:
        """Exact check whether j(T) is constant as a rational function."""
        degree = max(len(self.a_coeffs), len(self.b_coeffs), 1) - 1
        seen: set[Fraction] = set()
        t = 0
        checked = 0
        while checked < 6 * degree + 2:
            j = self.j_invariant(t)
            if j is not None:
                seen.add(j)
                checked += 1
                if len(seen) > 1:
                    return False
            t += 1
        return True


def _eval_poly(coeffs: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _eval_poly_mod(coeffs: Sequence[int], r: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(r)
    for c in reversed(coeffs):
        acc = (acc * r + c % p) % p
    return acc


def trace_of_frobenius(A: int, B: int, p: int) -> int:
    """a_p = p + 1 - #E(F_p) via the quadratic character sum, p >= 5.

    a_p = -sum_{x mod p} legendre(x^3 + A x + B); valid (by the standard
    minimal-model analysis) also at multiplicative/additive fibers.
    """
    if p < 5:
        raise ValueError("character-sum trace requires p >= 5")
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    f = ((x * x % p) * x + A % p * x + B % p) % p
    return -int(chi[f].sum())


def affine_point_count(A: int, B: int, p: int) -> int:
    """Brute-force count of affine points of y^2 = x^3 + A x + B over F_p."""
    count = 0
    for x in range(p):
        rhs = (x * x * x + A * x + B) % p
        for y in range(p):
            if (y * y - rhs) % p == 0:
                count += 1
    return count


def ap_residue_table(spec: EllipticFamilySpec, p: int) -> np.ndarray:
    """a_t(p) for t = 0..p-1 (t read mod p), as an exact int64 array.

    Vectorized over the (t, x) grid in chunks; the table drives family sums,
    Nagao sums and second moments, since a_t(p) only depends on t mod p.
    """
    if p < 5:
        raise ValueError("residue tables require p >= 5")
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    cubes = (x * x % p) * x % p
    r = np.arange(p, dtype=np.int64)
    Av = _eval_poly_mod(spec.a_coeffs, r, p)
    Bv = _eval_poly_mod(spec.b_coeffs, r, p)
    out = np.empty(p, dtype=np.int64)
    chunk = max(1, 8_000_000 // p)
    for lo in range(0, p, chunk):
        hi = min(p, lo + chunk)
        f = (cubes[None, :] + Av[lo:hi, None] * x[None, :] + Bv[lo:hi, None]) % p
        out[lo:hi] = -chi[f].sum(axis=1)
    return out


def residue_trace_sum(spec: EllipticFamilySpec, p: int) -> int:
    """Exact sum_{t mod p} a_t(p).

    When A and B have degree <= 1 in T the double character sum collapses:
    f(t, x) = x^3 + a0 x + b0 + t (a1 x + b1) is linear in t, so the t-sum
    vanishes except at the root of a1 x + b1, leaving -p * legendre(f) there.
    Higher-degree families fall back to the full residue table.
    """
    if p < 5:
        raise ValueError("requires p >= 5")
    if len(spec.a_coeffs) <= 2 and len(spec.b_coeffs) <= 2:
        a = list(spec.a_coeffs) + [0, 0]
        b = list(spec.b_coeffs) + [0, 0]
        a0, a1, b0, b1 = a[0] % p, a[1] % p, b[0] % p, b[1] % p
        if a1 == 0 and b1 == 0:
            # constant coefficients: every fiber is the same curve
            return p * trace_of_frobenius(a0, b0, p)
        if a1 == 0:
            # slope b1 != 0 at every x: all t-sums vanish
            return 0
        x0 = (-b1 * pow(a1, p - 2, p)) % p
        val = (x0 * x0 % p * x0 + a0 * x0 + b0) % p
        return -p * int(legendre_table(p)[val])
    return int(ap_residue_table(spec, p).sum())


def nagao_sum(spec: EllipticFamilySpec, X: int) -> float:
    """Rank estimate from the prime-averaged first moment of a_t(p).

    Computes (1/X) * sum_{5 <= p <= X} (log p / p) * sum_{t mod p} a_t(p)
    and returns its negative; the limit as X grows is the rank of the family
    (unconditionally for rational elliptic surfaces).

    Raises:
        ValueError: If X < 11.
    """
    if X < 11:
        raise ValueError("cutoff too small")
    table = sieve_primes(X)
    acc = 0.0
    for p, lp in zip(table.primes, table.log_p):
        p = int(p)
        if p < 5:
            continue
        acc += lp / p * residue_trace_sum(spec, p)
    return -acc / X


def michel_moment(spec: EllipticFamilySpec, p: int) -> int:
    """Exact second moment sum_{t mod p} a_t(p)^2 (requires non-constant j).

    For non-constant j this is p^2 + O(p^{3/2}).

    Raises:
        ValueError: If p < 5 or the family has constant j-invariant.
    """
    if p < 5:
        raise ValueError("second moment requires p >= 5")
    if spec.j_is_constant():
        raise ValueError("second-moment asymptotics require non-constant j")
    a = ap_residue_table(spec, p)
    return int(np.dot(a, a))


def j_collision_count(
    F: EllipticFamilySpec, G: EllipticFamilySpec, sample_cap: int = 100
) -> tuple[int, list[tuple[int, int]]]:
    """Number of (t, s) pairs with j_F(t) = j_G(s), by exact rational equality.

    Singular fibers never match.  Returns the count and a sample of pairs
    capped at ``sample_cap``.

    Raises:
        ValueError: If either family has constant j-invariant.
    """
    if F.j_is_constant() or G.j_is_constant():
        raise ValueError("collision counting requires non-constant j on both sides")
    by_j: dict[Fraction, list[int]] = {}
    for t in F.t_range:
        j = F.j_invariant(t)
        if j is not None:
            by_j.setdefault(j, []).append(t)
    count = 0
    sample: list[tuple[int, int]] = []
    for s in G.t_range:
        j = G.j_invariant(s)
        if j is None:
            continue
        for t in by_j.get(j, ()):
            count += 1
            if len(sample) < sample_cap:
                sample.append((t, s))
    return count, sample


def family_conductors(spec: EllipticFamilySpec) -> tuple[list[int], list[int]]:
    """Conductor proxies for the non-singular fibers of a family.

    Returns (parameters, conductors) for t with Delta(t) != 0; singular
    fibers are skipped.
    """
    ts: list[int] = []
    conds: list[int] = []
    for t in spec.t_range:
        A, B = spec.A(t), spec.B(t)
        if 4 * A**3 + 27 * B**2 == 0:
            continue
        ts.append(t)
        conds.append(conductor_proxy(A, B))
    return ts, conds


def avg_log_conductor(F: EllipticFamilySpec, G: EllipticFamilySpec) -> float:
    """Average, over parameter pairs, of the convolution log-conductor.

    For each pair the log-conductor is taken as the midpoint (geometric mean
    in log space) of the Rankin-Selberg bounds on the conductor proxies:
    2 log(C1 C2) - (5/2) log gcd(C1, C2).  Singular fibers are skipped.

    Raises:
        ValueError: If either family consists entirely of singular fibers.
    """
    _, cf = family_conductors(F)
    _, cg = family_conductors(G)
    if not cf or not cg:
        raise ValueError("no nonsingular fibers in range")
    logs_f = [math.log(c) for c in cf]
    logs_g = [math.log(c) for c in cg]
    base = 2.0 * (np.mean(logs_f) + np.mean(logs_g))
    if max(cf) < 2**62 and max(cg) < 2**62:
        gf = np.asarray(cf, dtype=np.int64)
        gg = np.asarray(cg, dtype=np.int64)
        gcd_mean = 0.0
        for c1 in gf:  # row-at-a-time keeps memory flat
            gcd_mean += float(np.log(np.gcd(c1, gg).astype(float)).sum())
        gcd_mean /= len(cf) * len(cg)
    else:
        gcd_mean = sum(
            math.log(math.gcd(c1, c2)) for c1 in cf for c2 in cg
        ) / (len(cf) * len(cg))
    return float(base - 2.5 * gcd_mean)
