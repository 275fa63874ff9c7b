"""Local coefficient engine: power sums of Satake parameters.

The coefficient sequence b(p), b(p^2), ... of an Euler factor is the sequence
of power sums of its Satake parameters; it is what the explicit formula
consumes.  This module implements the degree-2 Hecke recursion, symmetric
power lifts and the Rankin-Selberg product rule b_{fxg}(p^nu) =
b_f(p^nu) * b_g(p^nu).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LocalCoefficients",
    "SatakeSpectrum",
    "hecke_b",
    "hecke_a_values",
    "rankin_product",
    "sym_power_spectrum",
    "sym_power_b",
    "ones_coefficients",
    "zero_coefficients",
]


@dataclass(frozen=True)
class LocalCoefficients:
    """Power-sum coefficients b(p^nu) at a single prime.

    Attributes:
        p: The prime.
        degree: Number of Satake parameters of the Euler factor.
        b: Array b[nu-1] = b(p^nu), nu = 1..nu_max.  Real for self-dual
            factors; complex only for non-self-dual character data.
        ramanujan: Set when all Satake parameters are known unitary; then
            |b(p^nu)| <= degree for every nu (checked on construction).
    """

    p: int
    degree: int
    b: np.ndarray
    ramanujan: bool = False

    def __post_init__(self) -> None:
        if self.ramanujan and len(self.b):
            if float(np.max(np.abs(self.b))) > self.degree + 1e-9:
                raise ValueError("coefficients exceed the unitary bound")

    @property
    def nu_max(self) -> int:
        return len(self.b)

    def value(self, nu: int) -> complex:
        if not 1 <= nu <= self.nu_max:
            raise ValueError(f"nu = {nu} outside 1..{self.nu_max}")
        return self.b[nu - 1]


@dataclass(frozen=True)
class SatakeSpectrum:
    """Multiset of Satake parameters at p; the verification oracle.

    Power sums of ``alphas`` must reproduce LocalCoefficients entries.
    """

    p: int
    alphas: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.alphas)

    def power_sums(self, nu_max: int) -> LocalCoefficients:
        """b(p^nu) = sum_j alpha_j^nu computed directly."""
        b = np.array(
            [np.sum(self.alphas**nu) for nu in range(1, nu_max + 1)],
            dtype=np.complex128,
        )
        if np.max(np.abs(b.imag)) < 1e-12:
            b = b.real
        return LocalCoefficients(p=self.p, degree=self.degree, b=b)


def spectrum_from_trace(p: int, a_p: float) -> SatakeSpectrum:
    """The degree-2 pair {alpha, 1/alpha} with alpha + 1/alpha = a_p."""
    disc = complex(a_p) ** 2 - 4
    alpha = (a_p + np.sqrt(complex(disc))) / 2
    return SatakeSpectrum(p=p, alphas=np.array([alpha, 1 / alpha]))


def hecke_a_values(a_p: float, n_max: int) -> np.ndarray:
    """Hecke eigenvalue sequence a(p^n), n = 0..n_max, from a(p) = a_p.

    Uses a(p^{n+1}) = a_p * a(p^n) - a(p^{n-1}) with a(p^0) = 1.
    """
    a = np.empty(n_max + 1)
    a[0] = 1.0
    if n_max >= 1:
        a[1] = a_p
    for n in range(1, n_max):
        a[n + 1] = a_p * a[n] - a[n - 1]
    return a


def hecke_b(a_p: float, nu_max: int, p: int = 2) -> LocalCoefficients:
    """Degree-2 self-dual coefficients from the trace a_p.

    The Satake pair {alpha, 1/alpha} obeys the power-sum recurrence
    b(p^{nu+1}) = a_p * b(p^nu) - b(p^{nu-1}) with b(p^0) = 2, b(p) = a_p;
    in particular b(p^2) = a_p^2 - 2.

    Args:
        a_p: Normalized trace of Frobenius (|a_p| <= 2 in the tempered case).
        nu_max: Length of the coefficient sequence, >= 2.
        p: The prime label carried along.
    """
    if nu_max < 2:
        raise ValueError("nu_max must be at least 2")
    b = np.empty(nu_max)
    prev, cur = 2.0, float(a_p)
    for nu in range(nu_max):
        b[nu] = cur
        prev, cur = cur, a_p * cur - prev
    return LocalCoefficients(p=p, degree=2, b=b, ramanujan=abs(a_p) <= 2.0)


def hecke_b_array(a_p: np.ndarray, nu_max: int) -> np.ndarray:
    """Vectorized hecke_b: rows nu = 1..nu_max, columns follow a_p."""
    a_p = np.asarray(a_p, dtype=float)
    out = np.empty((nu_max,) + a_p.shape)
    prev = np.full(a_p.shape, 2.0)
    cur = a_p.copy()
    for nu in range(nu_max):
        out[nu] = cur
        prev, cur = cur, a_p * cur - prev
    return out


def rankin_product(x: LocalCoefficients, y: LocalCoefficients) -> LocalCoefficients:
    """Coefficients of the Rankin-Selberg product Euler factor.

    The product's Satake multiset is {alpha_i * beta_j}, so its power sums
    factor: b(p^nu) = b_x(p^nu) * b_y(p^nu) entrywise.

    Raises:
        ValueError: If x and y live at different primes.
    """
    if x.p != y.p:
        raise ValueError(f"prime mismatch: {x.p} != {y.p}")
    n = min(x.nu_max, y.nu_max)
    return LocalCoefficients(
        p=x.p,
        degree=x.degree * y.degree,
        b=x.b[:n] * y.b[:n],
        ramanujan=x.ramanujan and y.ramanujan,
    )


def sym_power_spectrum(spec: SatakeSpectrum, M: int) -> SatakeSpectrum:
    """Satake parameters of the M-th symmetric power of a degree-2 factor.

    {alpha, 1/alpha} lifts to {alpha^M, alpha^{M-2}, ..., alpha^{-M}}.

    Raises:
        ValueError: If the input spectrum is not degree 2 or M < 1.
    """
    if spec.degree != 2:
        raise ValueError("symmetric-power lift requires a degree-2 spectrum")
    if M < 1:
        raise ValueError("M must be positive")
    alpha = spec.alphas[np.argmax(np.abs(spec.alphas))]
    if abs(alpha) < 1e-300:
        raise ValueError("degenerate Satake parameter")
    exps = np.arange(M, -M - 1, -2)
    return SatakeSpectrum(p=spec.p, alphas=alpha ** exps.astype(complex))


def _sym_power_sum(trace: float, M: int) -> float:
    """sum_{j=0}^{M} x^{M-2j} for the pair {x, 1/x} with x + 1/x = trace.

    This is the Hecke a(p^M)-recursion run with parameter ``trace``; applied
    with trace = b(p^nu) it yields the nu-th power sum of the symmetric-power
    spectrum in exact real arithmetic.
    """
    prev, cur = 1.0, float(trace)
    if M == 0:
        return prev
    for _ in range(M - 1):
        prev, cur = cur, trace * cur - prev
    return cur


def sym_power_b(a_p: float, M: int, nu_max: int, p: int = 2) -> LocalCoefficients:
    """Coefficients of sym^M of a degree-2 self-dual factor with trace a_p.

    B(p) = a(p^M); B(p^2) is the alternating sum
    a(p^{2M}) - a(p^{2M-2}) + ... + (-1)^M a(p^0); entries for nu >= 3 are
    power sums of the symmetric-power spectrum (evaluated by the real
    recursion in _sym_power_sum, which agrees with the complex oracle).
    """
    if M < 1:
        raise ValueError("M must be positive")
    if nu_max < 2:
        raise ValueError("nu_max must be at least 2")
    a = hecke_a_values(a_p, 2 * M)
    b = np.empty(nu_max)
    b[0] = a[M]
    signs = (-1.0) ** (M - np.arange(M + 1))
    b[1] = float(np.dot(signs, a[0 : 2 * M + 1 : 2]))
    if nu_max >= 3:
        pair_sums = hecke_b(a_p, nu_max, p=p).b
        for nu in range(3, nu_max + 1):
            b[nu - 1] = _sym_power_sum(pair_sums[nu - 1], M)
    return LocalCoefficients(p=p, degree=M + 1, b=b, ramanujan=abs(a_p) <= 2.0)


def sym_power_b_array(a_p: np.ndarray, M: int, nu_max: int) -> np.ndarray:
    """Vectorized sym_power_b: rows nu = 1..nu_max, columns follow a_p."""
    a_p = np.asarray(a_p, dtype=float)
    n_a = max(2 * M, 1)
    a = np.empty((n_a + 1,) + a_p.shape)
    a[0] = 1.0
    a[1] = a_p
    for n in range(1, n_a):
        a[n + 1] = a_p * a[n] - a[n - 1]
    out = np.empty((nu_max,) + a_p.shape)
    out[0] = a[M]
    signs = (-1.0) ** (M - np.arange(M + 1))
    out[1] = np.tensordot(signs, a[0 : 2 * M + 1 : 2], axes=(0, 0))
    if nu_max >= 3:
        pair = hecke_b_array(a_p, nu_max)
        for nu in range(3, nu_max + 1):
            t = pair[nu - 1]
            prev = np.ones_like(t)
            cur = t.copy()
            if M == 0:
                out[nu - 1] = prev
                continue
            for _ in range(M - 1):
                prev, cur = cur, t * cur - prev
            out[nu - 1] = cur
    return out


def ones_coefficients(p: int, nu_max: int) -> LocalCoefficients:
    """The degree-1 trivial factor: b(p^nu) = 1 for all nu."""
    return LocalCoefficients(p=p, degree=1, b=np.ones(nu_max), ramanujan=True)


def zero_coefficients(p: int, nu_max: int, degree: int = 1) -> LocalCoefficients:
    """All-zero coefficients, used at ramified primes."""
    return LocalCoefficients(p=p, degree=degree, b=np.zeros(nu_max), ramanujan=True)
