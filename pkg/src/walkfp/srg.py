"""The {I, J, A} algebra of strongly regular graphs.

For an SRG with parameters (N, k, lam, mu) the adjacency matrix satisfies
A^2 = (k-mu) I + mu J + (lam-mu) A, so every power of A (and hence exp(iAt))
lives in the three-dimensional commutative algebra spanned by {I, J, A}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .graphs import SrgParams


class DegenerateSpectrumError(ValueError):
    """The two restricted eigenvalues coincide; spectral 3x3 solve is singular."""


class InconsistentParametersError(ValueError):
    """The parameter tuple admits no integral eigenvalue multiplicities."""


@dataclass(frozen=True)
class PowerCoefficients:
    """Exact integer coefficients of I, J, A in A**n."""

    n: int
    alpha: int
    beta: int
    gamma: int


@dataclass(frozen=True)
class SrgSpectrum:
    """Eigenvalues k > r > s of an SRG adjacency matrix, with multiplicities."""

    theta_k: float
    theta_r: float
    theta_s: float
    mult_k: int
    mult_r: int
    mult_s: int


@dataclass(frozen=True)
class PropagatorCoefficients:
    """Complex scalars with exp(iAt) == alpha I + beta J + gamma A."""

    t: float
    alpha: complex
    beta: complex
    gamma: complex


def power_coefficients(params: SrgParams, n: int) -> PowerCoefficients:
    """Coefficients of A**n in the {I, J, A} basis, by exact integer recurrence.

    Multiplying alpha I + beta J + gamma A by A and reducing A^2 gives
    alpha' = gamma (k - mu), beta' = beta k + gamma mu,
    gamma' = alpha + gamma (lam - mu), from the base (0, 0, 1).
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    k, lam, mu = params.k, params.lam, params.mu
    alpha, beta, gamma = 0, 0, 1
    for _ in range(n - 1):
        alpha, beta, gamma = (
            gamma * (k - mu),
            beta * k + gamma * mu,
            alpha + gamma * (lam - mu),
        )
    return PowerCoefficients(n, alpha, beta, gamma)


def srg_spectrum(params: SrgParams) -> SrgSpectrum:
    """Eigenvalues and multiplicities from the family parameters alone.

    The restricted eigenvalues are the roots of x^2 - (lam-mu) x - (k-mu) = 0;
    multiplicities follow from trace(A) = 0 and the total dimension.
    """
    n, k, lam, mu = params.as_tuple()
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    if disc < 0:
        raise InconsistentParametersError(f"negative discriminant for {params}")
    root = math.sqrt(disc)
    r = ((lam - mu) + root) / 2.0
    s = ((lam - mu) - root) / 2.0
    if r == s:
        raise DegenerateSpectrumError(f"restricted eigenvalues coincide for {params}")
    mr = (-k - (n - 1) * s) / (r - s)
    ms = (n - 1) - mr
    mr_i, ms_i = round(mr), round(ms)
    if abs(mr - mr_i) > 1e-6 or mr_i < 0 or ms_i < 0:
        raise InconsistentParametersError(
            f"non-integral eigenvalue multiplicities for {params}: {mr}, {ms}"
        )
    return SrgSpectrum(float(k), r, s, 1, mr_i, ms_i)


def propagator_coefficients(params: SrgParams, t: float) -> PropagatorCoefficients:
    """Scalars (alpha, beta, gamma) with exp(iAt) = alpha I + beta J + gamma A.

    Solved spectrally: the algebra element must act as exp(i theta t) on each
    eigenspace, giving a 3x3 linear system in (alpha, beta, gamma).
    """
    if not math.isfinite(t):
        raise ValueError("time must be finite")
    spec = srg_spectrum(params)
    n, k = params.n, params.k
    r, s = spec.theta_r, spec.theta_s
    er = cmath.exp(1j * r * t)
    es = cmath.exp(1j * s * t)
    ek = cmath.exp(1j * k * t)
    gamma = (er - es) / (r - s)
    alpha = er - gamma * r
    beta = (ek - alpha - gamma * k) / n
    return PropagatorCoefficients(t, alpha, beta, gamma)
