"""Weierstrass division and preparation over O_K at finite precision.

Division of g by f with wideg(f) = n runs the successive-approximation loop:
split f = t + X^n * e with t the low part (all coefficients of positive
valuation, by definition of wideg) and e a unit series, then iterate

    r_k = g_k mod X^n,   q_k = (g_k div X^n) * e^{-1},   g_{k+1} = -q_k * t.

Every coefficient of t has valuation >= 1, so g_k gains one pi-valuation per
sweep and at most N sweeps are needed at precision N. Summing the telescoping
identities gives g = q*f + r modulo (pi^N, X^M) exactly, with q the padded
representative accumulated by the loop.

Preparation divides X^n by f: X^n = q*f + r forces p := X^n - r to be
distinguished and u := q^{-1} a unit, with f = p*u. The factorization is
re-multiplied as a self-check before returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientXPrecision
from .okfield import FieldSpec, OKElement
from .series import PowerSeries


@dataclass(frozen=True)
class DistinguishedPoly:
    """Monic polynomial X^n + lows[n-1] X^{n-1} + ... + lows[0], with every
    low coefficient of positive valuation (distinguished for the maximal
    ideal). Distinguishedness is a residue test, hence exact."""

    n: int
    lows: tuple[OKElement, ...]
    spec: FieldSpec

    def __post_init__(self):
        if len(self.lows) != self.n:
            raise ValueError(f"expected {self.n} low coefficients, got {len(self.lows)}")
        for i, c in enumerate(self.lows):
            if c.spec != self.spec:
                raise ValueError("coefficient field spec mismatch")
            if c.residue() != 0:
                raise ValueError(f"coefficient {i} is a unit; polynomial not distinguished")

    @classmethod
    def from_roots(cls, roots, spec: FieldSpec) -> "DistinguishedPoly":
        """Expand prod (X - z_i); every root must have positive valuation."""
        coeffs = [OKElement.one(spec)]
        for z in roots:
            coeffs.append(OKElement.zero(spec))
            for i in range(len(coeffs) - 1, 0, -1):
                coeffs[i] = coeffs[i - 1] - z * coeffs[i]
            coeffs[0] = -z * coeffs[0]
        return cls(n=len(coeffs) - 1, lows=tuple(coeffs[:-1]), spec=spec)

    def as_series(self, xprec: int) -> PowerSeries:
        if xprec <= self.n:
            raise InsufficientXPrecision(
                f"degree-{self.n} polynomial needs xprec > {self.n}"
            )
        coeffs = list(self.lows) + [OKElement.one(self.spec)]
        return PowerSeries.from_elements(coeffs, self.spec, xprec=xprec)

    def evaluate(self, z: OKElement) -> OKElement:
        acc = OKElement.one(self.spec)
        for c in reversed(self.lows):
            acc = acc * z + c
        return acc

    def to_json(self) -> dict:
        return {"n": self.n, "lows": [c.to_json() for c in self.lows]}


@dataclass(frozen=True)
class WeierstrassFactorization:
    """A distinguished polynomial and unit series with p*u = f (re-checkable)."""

    p: DistinguishedPoly
    u: PowerSeries

    def verify(self, f: PowerSeries) -> bool:
        """Re-multiplication check: p*u = f mod (pi^N, X^{u.xprec})."""
        prod = self.p.as_series(self.u.xprec + self.p.n) * self.u
        return prod.congruent(f)


def _divide_raw(g: PowerSeries, f: PowerSeries) -> tuple[PowerSeries, tuple[OKElement, ...]]:
    """Division core. Returns (q, r) with q the padded length-M representative
    satisfying g = q*f + r mod (pi^N, X^M) exactly; q is intrinsically
    determined only below X^{M-n}."""
    n = f.wideg()
    M = min(f.xprec, g.xprec)
    if M <= n:
        raise InsufficientXPrecision(
            f"division needs X-precision > wideg ({n}), got {M}"
        )
    spec = f.spec
    f = f.truncate(M)
    g = g.truncate(M)
    t = f.low_part(n).pad(M)
    einv = f.shift_down(n).invert()  # X-precision M - n

    zero = OKElement.zero(spec)
    q_acc = PowerSeries.zero(spec, M)
    r_acc = [zero] * n
    cur = g
    for _ in range(spec.precision + 1):
        if all(c.valuation() is None for c in cur.coeffs):
            break
        for i in range(n):
            r_acc[i] = r_acc[i] + cur.coeffs[i]
        qk = (cur.shift_down(n) * einv).pad(M)
        q_acc = q_acc + qk
        cur = -(qk * t)
    else:
        raise RuntimeError("weierstrass division failed to converge in N sweeps")
    return q_acc, tuple(r_acc)


def weierstrass_divide(
    g: PowerSeries, f: PowerSeries
) -> tuple[PowerSeries, tuple[OKElement, ...]]:
    """Divide g by f: g = q*f + r with deg r < wideg(f).

    q is returned to X-precision M - n, which is all the division determines;
    r is determined modulo pi^N outright.
    """
    n = f.wideg()
    q, r = _divide_raw(g, f)
    return q.truncate(q.xprec - n), r


def weierstrass_prepare(f: PowerSeries) -> WeierstrassFactorization:
    """Factor f = p*u with p distinguished of degree wideg(f), u a unit.

    Raises WidegNotCertified / InsufficientXPrecision via the division, and
    RuntimeError if the internal re-multiplication check fails (a bug, not a
    domain condition).
    """
    n = f.wideg()
    M = f.xprec
    if M <= n:
        raise InsufficientXPrecision(f"preparation needs X-precision > {n}")
    xn = PowerSeries.monomial(f.spec, n, M)
    q, r = _divide_raw(xn, f)
    p = DistinguishedPoly(n, tuple(-c for c in r), f.spec)
    u_full = q.invert()
    if not (p.as_series(M) * u_full).congruent(f):
        raise RuntimeError("weierstrass preparation failed re-multiplication check")
    return WeierstrassFactorization(p=p, u=u_full.truncate(M - n))
