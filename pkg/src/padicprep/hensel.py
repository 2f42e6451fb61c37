"""Hensel factorization of restricted power series: unit-sphere roots.

A restricted series f (coefficients tending to 0) converges on the closed
unit disk; its roots on the unit sphere are governed by the unit coefficients
of f. With n = mu_min and n + d = mu_max the first and last unit coefficient
indices, the residue factorization

    fbar = pbar * ubar,   pbar = fbar_{n+d}^{-1} (fbar_n + ... + fbar_{n+d} X^d),
                          ubar = fbar_{n+d} X^n,

is coprime in F_p[X] because pbar(0) != 0, and lifts to f = P*U with P monic
of degree d and P(0) a unit. P collects exactly the d unit-sphere roots; for
a polynomial input it is the slope-zero factor.

At finite precision the stored coefficients are the same data as a
PowerSeries, with the convention that coefficients at degree >= M are
O(pi^N). Modulo pi^N the series therefore IS the polynomial f mod X^M, and
the lift runs on exact polynomial arithmetic: truncating intermediates at X^M
would instead perturb f by non-small tails and drift to a factorization of a
different restricted series. Each quadratic round divides f by the current P
(the quotient is the current U), corrects P by A*rem reduced mod P, and
refreshes the cached Bezout cofactor A = U^{-1} mod (P, pi^m).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientXPrecision, NoUnitCoefficient
from .okfield import OKElement
from .series import PowerSeries


def mu_indices(f: PowerSeries) -> tuple[int, int]:
    """(mu_min, mu_max - mu_min): first unit index and degree of the
    slope-zero factor. Exact by the residue test and the tail convention."""
    units = [i for i, c in enumerate(f.coeffs) if c.residue() != 0]
    if not units:
        raise NoUnitCoefficient(
            f"no unit coefficient below X-precision {f.xprec}"
        )
    return units[0], units[-1] - units[0]


# -- residue-field polynomial helpers (dense int lists, low degree first) --


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _fp_trim(out)


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = a[:]
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = (a[k + len(b) - 1] * binv) % p
        if c:
            q[k] = c
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - c * bi) % p
    return _fp_trim(q), _fp_trim(a[: len(b) - 1])


def _fp_xgcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """(g, s, t) with s*a + t*b = g over F_p, g trimmed but not normalized."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1, p), p)
        t0, t1 = t1, _fp_sub(t0, _fp_mul(q, t1, p), p)
    return r0, s0, t0


# -- exact polynomial helpers over O_K (dense OKElement lists) --------------


def _poly_mul(a: list[OKElement], b: list[OKElement], spec) -> list[OKElement]:
    zero = OKElement.zero(spec)
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.valuation() is None:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def _poly_divmod_monic(
    num: list[OKElement], pcoeffs: list[OKElement], spec
) -> tuple[list[OKElement], list[OKElement]]:
    """Exact long division by a monic polynomial (leading coefficient 1)."""
    d = len(pcoeffs) - 1
    rem = list(num)
    zero = OKElement.zero(spec)
    quo = [zero] * max(0, len(num) - d)
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        if c.valuation() is None:
            rem[k] = zero
            continue
        quo[k - d] = quo[k - d] + c
        for i in range(d):
            rem[k - d + i] = rem[k - d + i] - c * pcoeffs[i]
        rem[k] = zero
    rem = rem[:d]
    rem.extend([zero] * (d - len(rem)))
    return quo, rem


@dataclass(frozen=True)
class HenselFactorization:
    """f = factor * unit_part mod (pi^N, X^M); factor monic of degree d with
    a unit constant term, unit_part congruent to f_{n+d} X^n mod pi."""

    factor: tuple[OKElement, ...]  # degree d, monic, low coefficient first
    unit_part: PowerSeries
    mu_min: int
    degree: int

    def verify(self, f: PowerSeries) -> bool:
        spec = f.spec
        fac = PowerSeries.from_elements(self.factor, spec, xprec=f.xprec)
        return (fac * self.unit_part).congruent(f)


def hensel_factor(f: PowerSeries) -> HenselFactorization:
    """Split off the unit-sphere roots of a restricted series.

    Returns (P, U) with f = P*U mod (pi^N, X^M), P monic of degree
    mu_max - mu_min and P(0) a unit, U = f_{n+d} X^n at the residue level.
    Quadratic lifting, ceil(log2 N) + 1 rounds.
    """
    if f.xprec == 0:
        raise InsufficientXPrecision("empty truncation")
    n, d = mu_indices(f)
    spec = f.spec
    p = spec.p
    N = spec.precision
    M = f.xprec
    one = OKElement.one(spec)

    if d == 0:
        return HenselFactorization(factor=(one,), unit_part=f, mu_min=n, degree=0)

    fbar = [c.residue() for c in f.coeffs]
    lead_inv = pow(fbar[n + d], -1, p)
    pbar = [(lead_inv * fbar[n + i]) % p for i in range(d + 1)]
    ubar = [0] * n + [fbar[n + d]]

    # Cofactor abar = ubar^{-1} modulo (pbar, p), from s*ubar + t*pbar = 1.
    g, s, _ = _fp_xgcd(ubar, pbar, p)
    ginv = pow(g[0], -1, p)
    abar = [(ginv * c) % p for c in s]

    F = list(f.coeffs)
    P = [OKElement.from_int(c, spec) for c in pbar]
    A = [OKElement.from_int(c, spec) for c in abar] or [OKElement.zero(spec)]

    zero = OKElement.zero(spec)

    def _sub(a: list[OKElement], b: list[OKElement]) -> list[OKElement]:
        out = list(a) + [zero] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = out[i] - c
        return out

    known = 1
    while known < N:
        U, R = _poly_divmod_monic(F, P, spec)
        if any(c.valuation() is not None for c in R):
            _, dP = _poly_divmod_monic(_poly_mul(A, R, spec), P, spec)
            for i in range(d):
                P[i] = P[i] + dP[i]
            # Refresh the quotient against the new P so the cofactor update
            # below sees A*U = 1 mod (P, pi^(2*known)).
            U, _ = _poly_divmod_monic(F, P, spec)
        _, b = _poly_divmod_monic(_poly_mul(A, U, spec), P, spec)
        b = list(b) or [zero]
        b[0] = b[0] - one
        _, A = _poly_divmod_monic(_sub(A, _poly_mul(A, b, spec)), P, spec)
        known *= 2

    U, R = _poly_divmod_monic(F, P, spec)
    if any(c.valuation() is not None for c in R):
        raise RuntimeError("hensel factorization failed re-multiplication check")
    unit_part = PowerSeries.from_elements(U, spec, xprec=M)
    fac = HenselFactorization(
        factor=tuple(P), unit_part=unit_part, mu_min=n, degree=d
    )
    if not fac.verify(f):
        raise RuntimeError("hensel factorization failed re-multiplication check")
    return fac


def slope_zero_factor(F: PowerSeries) -> tuple[OKElement, ...]:
    """Monic factor of a polynomial collecting its valuation-0 roots.

    The input polynomial is viewed as a restricted series (its coefficient
    list is exact); the slope-0 factor is the Hensel P. Degree 0 (no unit-
    sphere roots) yields the constant 1.
    """
    return hensel_factor(F).factor
