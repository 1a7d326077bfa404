"""Módulo de quadratura para integrandos com singularidades do tipo raiz quadrada inversa nos extremos."""

import logging
import math
import warnings

import numpy as np
from scipy import integrate

from .erros import QuadratureFailure

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-6
_GAUSS_NODES = 48
_QUAD_LIMIT = 400


def _legendre_on_quarter_period(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    half = 0.25 * math.pi
    return half * (nodes + 1.0), half * weights


_RULES = {order: _legendre_on_quarter_period(order) for order in (_GAUSS_NODES, 2 * _GAUSS_NODES)}


def arcsine_quad(regularized, a, b, tolerance=DEFAULT_TOLERANCE):
    """
    Integrates f over [a, b] when f may diverge as (v-a)^(-1/2) and (b-v)^(-1/2).

    With v = a + (b-a)·sin²φ one has dv = 2·sqrt((v-a)(b-v))·dφ, so

        ∫_a^b f(v) dv = ∫_0^{π/2} 2·g(v, v-a, b-v) dφ,   g = f·sqrt((v-a)(b-v)),

    and g stays finite at both ends. The caller supplies g, receiving the exact
    distances to both endpoints so cancellation near the singularities is avoided.

    A fixed Gauss-Legendre pair (48 and 96 nodes) is tried first; if the two
    estimates disagree beyond `tolerance` the integral is recomputed with adaptive
    Gauss-Kronrod quadrature (scipy.integrate.quad).

    Args:
        regularized (callable): g(v, dist_a, dist_b), vectorized over numpy arrays.
        a (float): Lower limit.
        b (float): Upper limit, b >= a.
        tolerance (float): Relative tolerance.

    Returns:
        float: The integral.

    Raises:
        QuadratureFailure: If the adaptive fallback cannot reach the tolerance.
    """
    length = b - a
    if length <= 0.0:
        return 0.0

    def in_phi(phi):
        sin2 = np.sin(phi) ** 2
        cos2 = np.cos(phi) ** 2
        return 2.0 * regularized(a + length * sin2, length * sin2, length * cos2)

    estimates = []
    for order in (_GAUSS_NODES, 2 * _GAUSS_NODES):
        nodes, weights = _RULES[order]
        estimates.append(float(np.dot(weights, in_phi(nodes))))
    coarse, fine = estimates
    if abs(fine - coarse) <= tolerance * abs(fine):
        return fine

    logger.debug(f"Gauss-Legendre estimates differ ({coarse!r} vs {fine!r}); switching to adaptive quadrature.")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            lambda phi: float(in_phi(phi)), 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=tolerance, limit=_QUAD_LIMIT
        )
    achieved = abserr / abs(value) if value != 0.0 else abserr
    if achieved > 10.0 * tolerance:
        raise QuadratureFailure(f"quadrature on [{a!r}, {b!r}] did not reach relative tolerance {tolerance:g}", achieved)
    return value


def midpoint_rule(func, a, b, cells, skip_edges=True):
    """
    Brute-force midpoint rule on `cells` equal sub-intervals, optionally dropping the two end cells.

    Used to cross-check arcsine_quad away from the endpoint singularities.
    """
    edges = np.linspace(a, b, cells + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    values = func(mids) * np.diff(edges)
    if skip_edges:
        values = values[1:-1]
    return float(np.sum(values))
