"""Módulo para raízes de polinômios cúbicos: solução analítica pelo discriminante e refinamento por bissecção."""

import logging
import math

from scipy.optimize import brentq

from .erros import RootPolishFailure

logger = logging.getLogger(__name__)

TANGENCY_TOLERANCE = 1e-9
POLISH_RELATIVE_TOLERANCE = 1e-12
_MAX_BRACKET_DOUBLINGS = 200


def monic_cubic_roots(b, c, d):
    """
    Roots of v³ + b·v² + c·v + d = 0 from the sign of the discriminant.

    Three real roots use the trigonometric form, one real root uses Cardano's
    formula with real cube roots.

    Returns:
        tuple: (real_roots, quadratic) where `real_roots` is a sorted list and
        `quadratic` is (beta, gamma) of the irreducible factor v² + beta·v + gamma
        when only one real root exists, else None.
    """
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    # disc > 0: three distinct real roots; disc < 0: one real root
    disc = -(4.0 * p ** 3 + 27.0 * q * q)

    if disc >= 0.0 and p < 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg) / 3.0
        roots = sorted(m * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift for k in range(3))
        return roots, None

    if p == 0.0 and q == 0.0:
        root = -shift
        return [root, root, root], None

    sq = math.sqrt(max(q * q / 4.0 + p ** 3 / 27.0, 0.0))
    t = _cbrt(-q / 2.0 + sq) + _cbrt(-q / 2.0 - sq)
    root = t - shift
    return [root], _deflate(b, c, root)


def _cbrt(value):
    return math.copysign(abs(value) ** (1.0 / 3.0), value)


def _deflate(b, c, root):
    """Quadratic factor of the monic cubic after dividing out (v - root)."""
    beta = b + root
    gamma = c + root * beta
    return beta, gamma


def polish_root(func, guess, xtol, neighbours=()):
    """
    Refines an approximate simple root of `func` by bracketing and Brent bisection.

    The bracket grows geometrically around `guess` but never reaches half the
    distance to any neighbouring root, so the search cannot jump to another root.

    Args:
        func (callable): Scalar function whose root is refined.
        guess (float): Analytic approximation of the root.
        xtol (float): Absolute tolerance on the root location.
        neighbours (iterable[float]): Other roots of the same polynomial.

    Returns:
        float: The polished root, or `guess` unchanged when no sign change can be
        bracketed (double root at a tangency).

    Raises:
        RootPolishFailure: If the bracketed solver does not converge.
    """
    f0 = func(guess)
    if f0 == 0.0:
        return guess
    limit = math.inf
    for other in neighbours:
        if other != guess:
            limit = min(limit, 0.5 * abs(other - guess))
    step = max(xtol, 1e-9 * max(abs(guess), 1.0))
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if step > limit:
            break
        lo, hi = guess - step, guess + step
        f_lo, f_hi = func(lo), func(hi)
        if f_lo == 0.0:
            return lo
        if f_hi == 0.0:
            return hi
        if (f_lo < 0.0) != (f_hi < 0.0):
            try:
                return brentq(func, lo, hi, xtol=xtol, rtol=4.0 * 2.220446049250313e-16)
            except (RuntimeError, ValueError) as e:
                raise RootPolishFailure(f"root polishing near {guess!r} failed: {e}") from e
        step *= 2.0
    logger.debug(f"No sign change around {guess!r}; keeping the analytic root (tangency).")
    return guess
