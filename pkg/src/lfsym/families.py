"""Families of L-functions presented through their local data.

A family is a finite weighted collection of members, each serving
power-sum coefficients b(p^nu) at every prime, a log-conductor, and a
bad-prime predicate.  Statistics modules consume families through
``prime_moments``, which returns family-aggregated coefficient sums at one
prime; concrete families override it with vectorized implementations.

Constructors: nontrivial Dirichlet characters of prime modulus, quadratic
characters of fundamental discriminants, one-parameter elliptic-curve
families, the level-one weight-12 cusp form, symmetric-power lifts,
Rankin-Selberg convolutions and fixed twists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from . import weil
from .arith import (
    DirichletCharacter,
    characters_mod,
    is_prime,
    kronecker_symbol,
    kronecker_table_two,
    legendre_table,
    sieve_primes,
)
from .ecgeom import (
    EllipticFamilySpec,
    ap_residue_table,
    conductor_proxy,
    invariants,
    rs_conductor_bounds,
)
from .satake import (
    LocalCoefficients,
    hecke_b,
    hecke_b_array,
    rankin_product,
    sym_power_b,
    sym_power_b_array,
    zero_coefficients,
)

__all__ = [
    "Family",
    "PrimeMoments",
    "dirichlet_family",
    "quadratic_family",
    "elliptic_family",
    "cusp_form_delta",
    "sym_lift",
    "convolve",
    "twist_by_fixed",
    "fundamental_discriminants",
    "ramanujan_tau_table",
    "kronecker_twist",
    "character_twist",
    "delta_twist",
    "curves_isomorphic",
]


@dataclass(frozen=True)
class PrimeMoments:
    """Family-aggregated coefficient data at one prime.

    Attributes:
        p: The prime.
        good_weight: Total multiplicity of members unramified at p.
        total_weight: Total multiplicity of the family.
        sums: complex128 array, sums[nu-1] = sum over good members of
            multiplicity * b(p^nu).
    """

    p: int
    good_weight: float
    total_weight: float
    sums: np.ndarray

    @property
    def bad_weight(self) -> float:
        return self.total_weight - self.good_weight

    def average(self, nu: int) -> complex:
        if self.good_weight == 0:
            raise ZeroDivisionError(f"no members are good at p = {self.p}")
        return complex(self.sums[nu - 1]) / self.good_weight


class Family:
    """Base contract; concrete families override the data accessors."""

    family_id: str = "family"
    degree: int = 1

    # -- member-level contract ------------------------------------------------

    def iter_members(self) -> Iterator:
        raise NotImplementedError

    @property
    def members(self) -> list:
        return list(self.iter_members())

    def multiplicity(self, member) -> int:
        return 1

    def local_coefficients(self, member, p: int, nu_max: int) -> LocalCoefficients:
        raise NotImplementedError

    def log_conductor(self, member) -> float:
        raise NotImplementedError

    def bad_prime(self, member, p: int) -> bool:
        return False

    def sign(self, member) -> Optional[int]:
        return None

    # -- family-level derived data --------------------------------------------

    def size(self) -> float:
        """Number of members counted with multiplicity."""
        return float(sum(self.multiplicity(m) for m in self.iter_members()))

    def average_log_conductor(self) -> float:
        tot = w = 0.0
        for m in self.iter_members():
            mu = self.multiplicity(m)
            tot += mu * self.log_conductor(m)
            w += mu
        if w == 0:
            raise ValueError(f"family {self.family_id} is empty")
        return tot / w

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        """Aggregate b(p^nu) over the family; default loops over members."""
        sums = np.zeros(nu_max, dtype=np.complex128)
        good = total = 0.0
        for m in self.iter_members():
            mu = self.multiplicity(m)
            total += mu
            if self.bad_prime(m, p):
                continue
            good += mu
            sums += mu * np.asarray(
                self.local_coefficients(m, p, nu_max).b, dtype=np.complex128
            )
        return PrimeMoments(p=p, good_weight=good, total_weight=total, sums=sums)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.family_id!r}>"


# ---------------------------------------------------------------------------
# Dirichlet characters of prime modulus


class DirichletFamily(Family):
    """All nontrivial Dirichlet characters of prime modulus m."""

    def __init__(self, modulus: int):
        if not is_prime(modulus) or modulus < 3:
            raise ValueError("modulus must be an odd prime")
        self.modulus = modulus
        self.characters: list[DirichletCharacter] = [
            chi for chi in characters_mod(modulus) if not chi.is_trivial
        ]
        self.family_id = f"dirichlet({modulus})"
        self.degree = 1

    def iter_members(self) -> Iterator[int]:
        return iter(range(len(self.characters)))

    def local_coefficients(self, member, p, nu_max):
        chi = self.characters[member]
        b = np.array([chi.power_value(p, nu) for nu in range(1, nu_max + 1)])
        return LocalCoefficients(p=p, degree=1, b=b)

    def log_conductor(self, member) -> float:
        return math.log(self.modulus)

    def bad_prime(self, member, p: int) -> bool:
        return p % self.modulus == 0

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        m = self.modulus
        n = len(self.characters)
        if p % m == 0:
            return PrimeMoments(p, 0.0, float(n), np.zeros(nu_max, np.complex128))
        # orthogonality: the sum over all nontrivial characters of chi(a) is
        # m - 2 when a = 1 mod m and -1 otherwise; here a = p^nu.
        sums = np.empty(nu_max, dtype=np.complex128)
        for nu in range(1, nu_max + 1):
            sums[nu - 1] = (m - 2) if pow(p, nu, m) == 1 else -1
        return PrimeMoments(p, float(n), float(n), sums)


def dirichlet_family(m: int) -> DirichletFamily:
    """The m - 2 nontrivial characters modulo a prime m >= 3."""
    return DirichletFamily(m)


# ---------------------------------------------------------------------------
# Quadratic characters of fundamental discriminants


def fundamental_discriminants(
    lo: int, hi: int, stride: int = 1
) -> np.ndarray:
    """Fundamental discriminants among lo, lo+stride, ... below hi.

    d is fundamental when d = 1 mod 4 and squarefree, or d = 4m with
    m = 2, 3 mod 4 squarefree.  A stride coprime to every prime used in
    downstream sums keeps subsampled residues equidistributed.
    """
    cands = np.arange(lo, hi, stride, dtype=np.int64)
    if len(cands) == 0:
        return cands
    limit = math.isqrt(int(cands.max())) + 1
    primes = sieve_primes(max(limit, 2)).primes

    def squarefree(v: np.ndarray) -> np.ndarray:
        ok = np.ones(v.shape, dtype=bool)
        if len(v) == 0:
            return ok
        vmax = int(v.max())
        for p in primes:
            q = int(p) * int(p)
            if q > vmax:
                break
            ok &= (v % q) != 0
        return ok

    r4 = cands % 4
    keep = np.zeros(cands.shape, dtype=bool)
    one = r4 == 1
    keep[one] = squarefree(cands[one])
    zero = r4 == 0
    q = cands[zero] // 4
    keep[zero] = ((q % 4 == 2) | (q % 4 == 3)) & squarefree(q)
    return cands[keep]


class QuadraticFamily(Family):
    """Quadratic characters chi_d = (d|.) for fundamental discriminants d."""

    def __init__(self, d_min: int, d_max: int, stride: int = 1):
        self.discriminants = fundamental_discriminants(d_min, d_max, stride)
        if len(self.discriminants) == 0:
            raise ValueError("no fundamental discriminants in range")
        self.family_id = f"quadratic[{d_min},{d_max})" + (
            f"/{stride}" if stride != 1 else ""
        )
        self.degree = 1
        self._log_d = np.log(np.abs(self.discriminants).astype(float))

    def iter_members(self) -> Iterator[int]:
        return iter(self.discriminants.tolist())

    def local_coefficients(self, member, p, nu_max):
        chi = kronecker_symbol(int(member), p)
        b = np.array([float(chi**nu) for nu in range(1, nu_max + 1)])
        return LocalCoefficients(p=p, degree=1, b=b)

    def log_conductor(self, member) -> float:
        return math.log(abs(member))

    def bad_prime(self, member, p: int) -> bool:
        return member % p == 0

    def average_log_conductor(self) -> float:
        return float(self._log_d.mean())

    def size(self) -> float:
        return float(len(self.discriminants))

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        d = self.discriminants
        if p == 2:
            chi = kronecker_table_two(d)
        else:
            chi = legendre_table(p)[d % p]
        good = chi != 0
        ngood = float(good.sum())
        odd_sum = float(chi[good].sum())
        sums = np.empty(nu_max, dtype=np.complex128)
        sums[0::2] = odd_sum  # nu odd
        sums[1::2] = ngood  # nu even: chi^2 = 1 on good members
        return PrimeMoments(p, ngood, float(len(d)), sums)


def quadratic_family(d_range: tuple[int, int], stride: int = 1) -> QuadraticFamily:
    """Quadratic-character family over fundamental discriminants in d_range."""
    return QuadraticFamily(d_range[0], d_range[1], stride)


# ---------------------------------------------------------------------------
# One-parameter elliptic-curve families


class EllipticFamily(Family):
    """Specializations E_t: y^2 = x^3 + A(t)x + B(t) for t in a box.

    Local data at good p >= 5 comes from the character-sum trace a_t(p):
    b_t(p) = a_t(p)/sqrt(p) and the rest of the sequence by the degree-2
    power-sum recursion (so b_t(p^2) = a_t(p)^2/p - 2).  Primes 2 and 3 and
    p | Delta(t) are bad; singular fibers (Delta(t) = 0) are skipped and
    recorded.

    Semantically immutable; the per-prime caches are one-shot dict fills of
    deterministic values, so concurrent readers can at worst duplicate work.
    """

    def __init__(self, spec: EllipticFamilySpec):
        self.spec = spec
        delta = [spec.discriminant(t) for t in spec.t_range]
        self.members_list = [
            t for t, dlt in zip(spec.t_range, delta) if dlt != 0
        ]
        self.singular_fibers = [
            t for t, dlt in zip(spec.t_range, delta) if dlt == 0
        ]
        if not self.members_list:
            raise ValueError("all fibers in range are singular")
        self._members_arr = np.asarray(self.members_list, dtype=np.int64)
        self.family_id = (
            f"ec(A={list(spec.a_coeffs)},B={list(spec.b_coeffs)},"
            f"t=[{spec.t_min},{spec.t_max}))"
        )
        self.degree = 2
        self._log_cond: dict[int, float] = {}
        self._residue_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._moment_cache: dict[tuple[int, int], PrimeMoments] = {}

    def iter_members(self) -> Iterator[int]:
        return iter(self.members_list)

    def size(self) -> float:
        return float(len(self.members_list))

    def hecke_eigenvalue(self, member: int, p: int) -> float:
        """Normalized trace a_t(p)/sqrt(p) from the character sum (p >= 5)."""
        a = ap_residue_table(self.spec, p)[member % p]
        return float(a) / math.sqrt(p)

    def local_coefficients(self, member, p, nu_max):
        if p in (2, 3):
            return zero_coefficients(p, nu_max, degree=2)
        return hecke_b(self.hecke_eigenvalue(member, p), nu_max, p=p)

    def log_conductor(self, member) -> float:
        if member not in self._log_cond:
            self._log_cond[member] = math.log(
                conductor_proxy(self.spec.A(member), self.spec.B(member))
            )
        return self._log_cond[member]

    def bad_prime(self, member, p: int) -> bool:
        return p in (2, 3) or self.spec.discriminant(member) % p == 0

    def residue_data(self, p: int) -> tuple[np.ndarray, np.ndarray]:
        """(a_r table, member weights on good residues) for p >= 5; cached."""
        if p not in self._residue_cache:
            a = ap_residue_table(self.spec, p)
            r = np.arange(p, dtype=np.int64)
            delta_mod = (
                4 * _poly_mod_cubed(self.spec.a_coeffs, r, p)
                + 27 * _poly_mod_sq(self.spec.b_coeffs, r, p)
            ) % p
            counts = np.bincount(self._members_arr % p, minlength=p).astype(float)
            self._residue_cache[p] = (a, counts * (delta_mod != 0))
        return self._residue_cache[p]

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        key = (p, nu_max)
        if key in self._moment_cache:
            return self._moment_cache[key]
        n = float(len(self.members_list))
        if p in (2, 3):
            out = PrimeMoments(p, 0.0, n, np.zeros(nu_max, np.complex128))
        else:
            a, weights = self.residue_data(p)
            btab = hecke_b_array(a / math.sqrt(p), nu_max)
            sums = btab @ weights
            out = PrimeMoments(
                p, float(weights.sum()), n, sums.astype(np.complex128)
            )
        self._moment_cache[key] = out
        return out


def _poly_mod_cubed(coeffs: Sequence[int], r: np.ndarray, p: int) -> np.ndarray:
    v = _poly_mod(coeffs, r, p)
    return (v * v % p) * v % p


def _poly_mod_sq(coeffs: Sequence[int], r: np.ndarray, p: int) -> np.ndarray:
    v = _poly_mod(coeffs, r, p)
    return v * v % p


def _poly_mod(coeffs: Sequence[int], r: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(r)
    for c in reversed(coeffs):
        acc = (acc * r + c % p) % p
    return acc


def elliptic_family(spec: EllipticFamilySpec) -> EllipticFamily:
    """Family of fiber curves of y^2 = x^3 + A(T)x + B(T) over a t-box."""
    if all(c == 0 for c in spec.a_coeffs) and all(c == 0 for c in spec.b_coeffs):
        raise ValueError("discriminant vanishes identically")
    return EllipticFamily(spec)


# ---------------------------------------------------------------------------
# The discriminant cusp form


def ramanujan_tau_table(n_max: int) -> list[int]:
    """tau(1..n_max) as exact integers, from the 24th power of the
    pentagonal-number series (Euler product of the eta function)."""
    length = n_max  # coefficients of q^0 .. q^{n_max - 1} in eta-product^24
    pent: list[tuple[int, int]] = []
    k = 1
    while True:
        for kk in (k, -k):
            e = kk * (3 * kk - 1) // 2
            if e < length:
                pent.append((e, -1 if kk % 2 else 1))
        if k * (3 * k - 1) // 2 >= length:
            break
        k += 1
    pent.sort()
    series = [0] * length
    series[0] = 1
    for _ in range(24):
        nxt = [0] * length
        for e, s in [(0, 1)] + pent:
            if s == 1:
                for i in range(length - e):
                    nxt[i + e] += series[i]
            else:
                for i in range(length - e):
                    nxt[i + e] -= series[i]
        series = nxt
    return series  # series[n-1] = tau(n)


class DeltaFamily(Family):
    """The singleton family of the level-1 weight-12 cusp form."""

    def __init__(self, coefficient_bound: int = 2000):
        self.coefficient_bound = coefficient_bound
        self.tau = ramanujan_tau_table(coefficient_bound)
        self.family_id = "delta"
        self.degree = 2
        self._logq = weil.log_analytic_conductor(weil.disc(12))

    def iter_members(self) -> Iterator[str]:
        return iter(("delta",))

    def hecke_eigenvalue(self, member, p: int) -> float:
        if p > self.coefficient_bound:
            raise ValueError(
                f"coefficient p = {p} beyond precomputed bound "
                f"{self.coefficient_bound}"
            )
        return self.tau[p - 1] / p**5.5

    def local_coefficients(self, member, p, nu_max):
        return hecke_b(self.hecke_eigenvalue(member, p), nu_max, p=p)

    def log_conductor(self, member) -> float:
        return self._logq

    def bad_prime(self, member, p: int) -> bool:
        return False


def cusp_form_delta(coefficient_bound: int = 2000) -> DeltaFamily:
    return DeltaFamily(coefficient_bound)


# ---------------------------------------------------------------------------
# Symmetric-power lifts


class SymLiftFamily(Family):
    """Member-wise symmetric-power lift of a degree-2 self-dual family."""

    def __init__(self, base: Family, power: int):
        if base.degree != 2:
            raise ValueError("symmetric-power lift requires a degree-2 family")
        if not hasattr(base, "hecke_eigenvalue"):
            raise ValueError("base family does not expose Hecke eigenvalues")
        if power < 1:
            raise ValueError("power must be positive")
        self.base = base
        self.power = power
        self.family_id = f"sym{power}({base.family_id})"
        self.degree = power + 1
        # conductor scale: degree-2 archimedean factor of weight k has
        # log Q ~ 2 log(k/2); the lift has (M+1) or M such factors.
        if isinstance(base, DeltaFamily):
            self._logq = weil.log_analytic_conductor(
                weil.sym_power(weil.disc(12), power)
            )
        else:
            m = power
            self._logq = None
            self._scale = (m + 1) / 2.0 if m % 2 else m / 2.0

    def iter_members(self):
        return self.base.iter_members()

    def multiplicity(self, member):
        return self.base.multiplicity(member)

    def local_coefficients(self, member, p, nu_max):
        if self.base.bad_prime(member, p):
            return zero_coefficients(p, nu_max, degree=self.degree)
        a = self.base.hecke_eigenvalue(member, p)
        return sym_power_b(a, self.power, nu_max, p=p)

    def log_conductor(self, member) -> float:
        if self._logq is not None:
            return self._logq
        return self._scale * self.base.log_conductor(member)

    def bad_prime(self, member, p: int) -> bool:
        return self.base.bad_prime(member, p)

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        base = self.base
        if isinstance(base, EllipticFamily):
            n = base.size()
            if p in (2, 3):
                return PrimeMoments(p, 0.0, n, np.zeros(nu_max, np.complex128))
            a, weights = base.residue_data(p)
            btab = sym_power_b_array(a / math.sqrt(p), self.power, nu_max)
            return PrimeMoments(
                p, float(weights.sum()), n, (btab @ weights).astype(np.complex128)
            )
        return super().prime_moments(p, nu_max)


def sym_lift(f: Family, M: int) -> Family:
    """The family of M-th symmetric powers of a degree-2 family."""
    if M == 1:
        return f
    return SymLiftFamily(f, M)


# ---------------------------------------------------------------------------
# Rankin-Selberg convolutions


def _is_kth_power(n: int, k: int) -> bool:
    if n < 0:
        return False
    if n in (0, 1):
        return True
    if k % 2 == 0:
        s = math.isqrt(n)
        return s * s == n and _is_kth_power(s, k // 2)
    r = round(n ** (1.0 / k))
    return any(c >= 0 and c**k == n for c in (r - 1, r, r + 1))


def _is_kth_power_fraction(q: Fraction, k: int) -> bool:
    return q > 0 and _is_kth_power(q.numerator, k) and _is_kth_power(q.denominator, k)


def curves_isomorphic(A1: int, B1: int, A2: int, B2: int) -> bool:
    """Whether two nonsingular short Weierstrass models are isomorphic over Q.

    Isomorphism means (A2, B2) = (u^4 A1, u^6 B1) for rational u; equal
    j-invariant plus rationality of the scaling factor.
    """
    i1, i2 = invariants(A1, B1), invariants(A2, B2)
    if i1.singular or i2.singular or i1.j != i2.j:
        return False
    if A1 == 0:  # j = 0: compare B via a rational sixth power
        return _is_kth_power_fraction(Fraction(B2, B1), 6)
    if B1 == 0:  # j = 1728: compare A via a rational fourth power
        return _is_kth_power_fraction(Fraction(A2, A1), 4)
    u2 = Fraction(A1 * B2, A2 * B1)
    if not _is_kth_power_fraction(u2, 2):
        return False
    return u2**2 == Fraction(A2, A1) and u2**3 == Fraction(B2, B1)


class ConvolutionFamily(Family):
    """Pairs (f, g) with coefficients b_f(p^nu) * b_g(p^nu).

    Pairs flagged by the collision policy (potentially imprimitive
    convolutions) are excluded.  Aggregated moments use the product
    structure: the sum over included pairs is the product of the factor sums
    minus the small excluded correction.
    """

    def __init__(self, left: Family, right: Family, collision_policy: str = "auto"):
        self.left = left
        self.right = right
        policy = collision_policy
        if policy == "auto":
            if isinstance(left, EllipticFamily) and isinstance(right, EllipticFamily):
                policy = "ec-isomorphism"
            elif left is right or left.family_id == right.family_id:
                policy = "identity"
            else:
                policy = "none"
        self.policy = policy
        self.excluded: list[tuple] = self._collisions()
        self._excluded_set = set(self.excluded)
        self.family_id = f"({left.family_id})x({right.family_id})"
        self.degree = left.degree * right.degree
        self._ec_pair = isinstance(left, EllipticFamily) and isinstance(
            right, EllipticFamily
        )

    def _collisions(self) -> list[tuple]:
        if self.policy == "none":
            return []
        if self.policy == "identity":
            lset = {m for m in self.left.iter_members()}
            return [(m, m) for m in self.right.iter_members() if m in lset]
        if self.policy == "ec-isomorphism":
            lspec = self.left.spec
            rspec = self.right.spec
            by_j: dict = {}
            for t in self.left.iter_members():
                by_j.setdefault(lspec.j_invariant(t), []).append(t)
            out = []
            for s in self.right.iter_members():
                j = rspec.j_invariant(s)
                for t in by_j.get(j, ()):
                    if curves_isomorphic(
                        lspec.A(t), lspec.B(t), rspec.A(s), rspec.B(s)
                    ):
                        out.append((t, s))
            return out
        raise ValueError(f"unknown collision policy {self.policy!r}")

    def iter_members(self) -> Iterator[tuple]:
        for f in self.left.iter_members():
            for g in self.right.iter_members():
                if (f, g) not in self._excluded_set:
                    yield (f, g)

    def multiplicity(self, member) -> int:
        f, g = member
        return self.left.multiplicity(f) * self.right.multiplicity(g)

    def size(self) -> float:
        excluded_w = sum(
            self.left.multiplicity(f) * self.right.multiplicity(g)
            for f, g in self.excluded
        )
        return self.left.size() * self.right.size() - excluded_w

    def local_coefficients(self, member, p, nu_max):
        f, g = member
        return rankin_product(
            self.left.local_coefficients(f, p, nu_max),
            self.right.local_coefficients(g, p, nu_max),
        )

    def log_conductor(self, member) -> float:
        f, g = member
        if self._ec_pair:
            c1 = conductor_proxy(self.left.spec.A(f), self.left.spec.B(f))
            c2 = conductor_proxy(self.right.spec.A(g), self.right.spec.B(g))
            lo, hi = rs_conductor_bounds(c1, c2)
            return 0.5 * (math.log(lo) + math.log(hi))
        return self.left.log_conductor(f) + self.right.log_conductor(g)

    def average_log_conductor(self) -> float:
        if self._ec_pair:
            from .ecgeom import avg_log_conductor

            return avg_log_conductor(self.left.spec, self.right.spec)
        return (
            self.left.average_log_conductor() + self.right.average_log_conductor()
        )

    def bad_prime(self, member, p: int) -> bool:
        f, g = member
        return self.left.bad_prime(f, p) or self.right.bad_prime(g, p)

    def sign(self, member) -> Optional[int]:
        f, g = member
        sl, sr = self.left.sign(f), self.right.sign(g)
        if sl is None or sr is None:
            return None
        return sl * sr

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        ml = self.left.prime_moments(p, nu_max)
        mr = self.right.prime_moments(p, nu_max)
        sums = ml.sums * mr.sums
        good = ml.good_weight * mr.good_weight
        total = ml.total_weight * mr.total_weight
        for f, g in self.excluded:
            mu = self.left.multiplicity(f) * self.right.multiplicity(g)
            total -= mu
            if self.left.bad_prime(f, p) or self.right.bad_prime(g, p):
                continue
            bf = np.asarray(
                self.left.local_coefficients(f, p, nu_max).b, dtype=np.complex128
            )
            bg = np.asarray(
                self.right.local_coefficients(g, p, nu_max).b, dtype=np.complex128
            )
            sums = sums - mu * bf * bg
            good -= mu
        return PrimeMoments(p, good, total, sums)


def convolve(f: Family, g: Family, collision_policy: str = "auto") -> Family:
    """Rankin-Selberg convolution family with collision exclusion."""
    return ConvolutionFamily(f, g, collision_policy)


# ---------------------------------------------------------------------------
# Fixed twists


class FixedTwist:
    """A single L-function used to twist a whole family."""

    twist_id: str = "twist"
    degree: int = 1
    log_conductor: float = 0.0

    def bad_prime(self, p: int) -> bool:
        return False

    def local_coefficients(self, p: int, nu_max: int) -> LocalCoefficients:
        raise NotImplementedError


class KroneckerTwist(FixedTwist):
    def __init__(self, d: int):
        if d == 0:
            raise ValueError("discriminant must be nonzero")
        self.d = d
        self.twist_id = f"chi({d})"
        self.log_conductor = math.log(abs(d))

    def bad_prime(self, p: int) -> bool:
        return self.d % p == 0

    def local_coefficients(self, p, nu_max):
        chi = kronecker_symbol(self.d, p)
        b = np.array([float(chi**nu) for nu in range(1, nu_max + 1)])
        return LocalCoefficients(p=p, degree=1, b=b)


class CharacterTwist(FixedTwist):
    def __init__(self, char: DirichletCharacter):
        self.char = char
        self.twist_id = f"chi_{char.modulus}^{char.index}"
        self.log_conductor = math.log(char.modulus)

    def bad_prime(self, p: int) -> bool:
        return p % self.char.modulus == 0

    def local_coefficients(self, p, nu_max):
        b = np.array([self.char.power_value(p, nu) for nu in range(1, nu_max + 1)])
        return LocalCoefficients(p=p, degree=1, b=b)


class DeltaTwist(FixedTwist):
    def __init__(self, coefficient_bound: int = 2000):
        self._fam = DeltaFamily(coefficient_bound)
        self.twist_id = "delta"
        self.degree = 2
        self.log_conductor = self._fam.log_conductor("delta")

    def local_coefficients(self, p, nu_max):
        return self._fam.local_coefficients("delta", p, nu_max)


def kronecker_twist(d: int) -> KroneckerTwist:
    return KroneckerTwist(d)


def character_twist(modulus: int, index: int) -> CharacterTwist:
    chars = characters_mod(modulus)
    return CharacterTwist(chars[index])


def delta_twist(coefficient_bound: int = 2000) -> DeltaTwist:
    return DeltaTwist(coefficient_bound)


class TwistedFamily(Family):
    """The fixed form h against every member of a base family."""

    def __init__(self, twist: FixedTwist, base: Family):
        self.twist = twist
        self.base = base
        self.family_id = f"({twist.twist_id})x({base.family_id})"
        self.degree = twist.degree * base.degree

    def iter_members(self):
        return self.base.iter_members()

    def multiplicity(self, member):
        return self.base.multiplicity(member)

    def local_coefficients(self, member, p, nu_max):
        return rankin_product(
            self.twist.local_coefficients(p, nu_max),
            self.base.local_coefficients(member, p, nu_max),
        )

    def log_conductor(self, member) -> float:
        # conductor of a pair grows like each factor raised to the other's
        # degree; in logs: deg(h) * log Q_g + deg(g) * log c_h
        return (
            self.twist.degree * self.base.log_conductor(member)
            + self.base.degree * self.twist.log_conductor
        )

    def bad_prime(self, member, p: int) -> bool:
        return self.twist.bad_prime(p) or self.base.bad_prime(member, p)

    def prime_moments(self, p: int, nu_max: int) -> PrimeMoments:
        mb = self.base.prime_moments(p, nu_max)
        if self.twist.bad_prime(p):
            return PrimeMoments(
                p, 0.0, mb.total_weight, np.zeros(nu_max, np.complex128)
            )
        hb = np.asarray(
            self.twist.local_coefficients(p, nu_max).b, dtype=np.complex128
        )
        return PrimeMoments(p, mb.good_weight, mb.total_weight, hb * mb.sums)


def twist_by_fixed(h: FixedTwist, g: Family) -> TwistedFamily:
    """Twist every member of g by the fixed form h."""
    return TwistedFamily(h, g)
