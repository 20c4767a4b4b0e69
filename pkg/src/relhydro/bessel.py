"""Half-integer-order Bessel functions.

Everything here reduces to the closed trigonometric/hyperbolic forms at order
1/2 plus three-term recurrences run in their stable direction:

* J_{l+1/2}: upward from J_{1/2}, J_{3/2} when x is comfortably above the
  order, downward (Miller) normalization against the exact J_{1/2} otherwise.
* I_{l+1/2}: downward Miller recursion, computed in scaled form e^{-x} I(x).
* K_{l+1/2}: upward recursion (stable), computed in scaled form e^{x} K(x).

Scaled forms keep products like x*K*I representable even when the factors
overflow or underflow.
"""
from __future__ import annotations

import math

__all__ = [
    "bessel_j_half",
    "bessel_ik_half",
    "bessel_ik_half_scaled",
    "ki_product_half",
]

_HUGE = 1e250


def _check_order_x(ell: int, x: float) -> None:
    if ell < 0 or int(ell) != ell:
        raise ValueError(f"order index ell must be a non-negative integer, got {ell}")
    if not x > 0:
        raise ValueError(f"argument must be positive, got {x}")


def bessel_j_half(ell: int, x: float) -> float:
    """J_{ell+1/2}(x) for integer ell >= 0 and x > 0."""
    _check_order_x(ell, x)
    x = float(x)
    j0 = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
    if ell == 0:
        return j0
    j1 = math.sqrt(2.0 / (math.pi * x)) * (math.sin(x) / x - math.cos(x))
    if ell == 1:
        return j1
    if x >= ell + 0.5:
        # upward recurrence is stable above the turning point
        jm, jp = j0, j1
        for m in range(1, ell):
            jm, jp = jp, (2 * m + 1) / x * jp - jm
        return jp
    # downward Miller recursion, normalized against the exact J_{1/2}
    guard = 18 + int(2.0 * math.sqrt(max(ell, 1)) + 0.1 * x)
    top = ell + guard
    pp, pc = 0.0, 1e-280
    target = 0.0
    for m in range(top, 0, -1):
        nu = m + 0.5
        pm = (2.0 * nu / x) * pc - pp
        pp, pc = pc, pm
        if m - 1 == ell:
            target = pc
        if abs(pc) > _HUGE:
            pc /= _HUGE
            pp /= _HUGE
            target /= _HUGE
    return target * (j0 / pc)


def bessel_ik_half_scaled(ell: int, x: float) -> tuple[float, float]:
    """Scaled pair (e^{-x} I_{ell+1/2}(x), e^{x} K_{ell+1/2}(x))."""
    _check_order_x(ell, x)
    x = float(x)
    # K: upward, scaled by e^{x}
    k0 = math.sqrt(math.pi / (2.0 * x))
    k1 = k0 * (1.0 + 1.0 / x)
    if ell == 0:
        ks = k0
    elif ell == 1:
        ks = k1
    else:
        km, kp = k0, k1
        for m in range(1, ell):
            km, kp = kp, (2 * m + 1) / x * kp + km
        ks = kp
    # I: downward Miller, scaled by e^{-x}; seed ratio at high order
    i0 = -math.sqrt(1.0 / (2.0 * math.pi * x)) * math.expm1(-2.0 * x)
    if ell == 0:
        return i0, ks
    guard = 18 + int(2.0 * math.sqrt(ell) + 0.1 * x)
    top = ell + guard
    pp, pc = 0.0, 1e-280
    target = 0.0
    for m in range(top, 0, -1):
        nu = m + 0.5
        pm = (2.0 * nu / x) * pc + pp
        pp, pc = pc, pm
        if m - 1 == ell:
            target = pc
        if abs(pc) > _HUGE:
            pc /= _HUGE
            pp /= _HUGE
            target /= _HUGE
    return target * (i0 / pc), ks


def bessel_ik_half(ell: int, x: float) -> tuple[float, float]:
    """(I_{ell+1/2}(x), K_{ell+1/2}(x)); raises OverflowError instead of
    saturating when the unscaled I exceeds the double range."""
    iscaled, kscaled = bessel_ik_half_scaled(ell, x)
    try:
        iv = iscaled * math.exp(x)
    except OverflowError:
        iv = math.inf
    if math.isinf(iv):
        raise OverflowError(f"I_{{{ell}+1/2}}({x}) exceeds the double range")
    return iv, kscaled * math.exp(-x)


def ki_product_half(ell: int, x: float) -> float:
    """x * K_{ell+1/2}(x) * I_{ell+1/2}(x), computed in scaled form."""
    iscaled, kscaled = bessel_ik_half_scaled(ell, x)
    return x * iscaled * kscaled
