"""Resultants and discriminants of p-adic power series.

For f with wideg(f) = n, the resultant of f and g is the product of g over
the n roots of f in the open unit disk. It is computed by preparing f,
reducing g modulo the distinguished factor p (a finite polynomial gbar of
degree < n), and taking det(gbar(C)) for C the companion matrix of p: the
eigenvalues of C are the roots of p, so the determinant is exactly the wanted
product. The determinant is evaluated with the Berkowitz algorithm, which is
division-free and therefore exact over O_K/pi^N despite its zero divisors.

Reduction modulo p uses X^n = -(p_{n-1} X^{n-1} + ... + p_0): each fold
multiplies by coefficients of valuation >= 1, so the X-degree-k term of g
contributes at valuation >= ceil((k - n + 1)/n). Terms of degree >= n*N
vanish modulo pi^N; conversely an input truncated below n*N only certifies
the output to the tail bound, which the returned value carries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .okfield import CertifiedValue, OKElement
from .series import PowerSeries
from .weierstrass import DistinguishedPoly, weierstrass_prepare


def _tail_precision(n: int, xprec: int, N: int) -> int:
    """Certified pi-adic precision of a mod-p reduction read off X-prec."""
    if n == 0:
        return N
    if xprec >= n * N:
        return N
    return max(0, min(N, -(-(xprec - n + 1) // n)))


def reduce_mod_distinguished(
    g: PowerSeries, p: DistinguishedPoly
) -> tuple[tuple[OKElement, ...], int]:
    """g modulo (p, pi^N) as a degree-<n coefficient tuple, plus the
    pi-adic precision the truncation of g certifies."""
    n = p.n
    spec = g.spec
    N = spec.precision
    if n == 0:
        return (), N
    meff = min(g.xprec, n * N)
    acc = [OKElement.zero(spec)] * n
    # vec tracks X^k mod p; folding the overflow multiplies by -p_i.
    vec = [OKElement.zero(spec)] * n
    vec[0] = OKElement.one(spec)
    for k in range(meff):
        gk = g.coeffs[k]
        if gk.valuation() is not None:
            for i in range(n):
                acc[i] = acc[i] + gk * vec[i]
        top = vec[n - 1]
        vec = [OKElement.zero(spec)] + vec[: n - 1]
        if top.valuation() is not None:
            for i in range(n):
                vec[i] = vec[i] - top * p.lows[i]
    return tuple(acc), _tail_precision(n, g.xprec, N)


def _berkowitz_char_vector(mat: list[list[OKElement]], spec) -> list[OKElement]:
    """Coefficient vector of det(tI - M), leading coefficient first.

    Samuelson-Berkowitz: division-free, so valid over rings with zero
    divisors such as O_K/pi^N.
    """
    one = OKElement.one(spec)
    zero = OKElement.zero(spec)
    n = len(mat)
    if n == 0:
        return [one]
    if n == 1:
        return [one, -mat[0][0]]
    a = mat[0][0]
    row = mat[0][1:]
    col = [mat[i][0] for i in range(1, n)]
    sub = [r[1:] for r in mat[1:]]
    # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
    diags = [one, -a]
    vec = col
    for _ in range(n - 1):
        s = zero
        for ri, vi in zip(row, vec):
            s = s + ri * vi
        diags.append(-s)
        vec = [
            sum((sub[i][j] * vec[j] for j in range(n - 1)), zero)
            for i in range(n - 1)
        ]
    prev = _berkowitz_char_vector(sub, spec)
    out = []
    for i in range(n + 1):
        s = zero
        for j in range(len(prev)):
            if 0 <= i - j <= n:
                if i - j < len(diags):
                    s = s + diags[i - j] * prev[j]
        out.append(s)
    return out


def _det(mat: list[list[OKElement]], spec) -> OKElement:
    vec = _berkowitz_char_vector(mat, spec)
    d = vec[-1]
    if (len(vec) - 1) % 2 == 1:
        d = -d
    return d


def respol(p: DistinguishedPoly, g: PowerSeries) -> CertifiedValue:
    """Product of g over the roots of p, as det(gbar(C)) for the companion
    matrix C of p. Empty product (n = 0) is 1."""
    spec = g.spec
    n = p.n
    if n == 0:
        return CertifiedValue(OKElement.one(spec), spec.precision)
    gbar, prec = reduce_mod_distinguished(g, p)
    # Columns of gbar(C): col_0 is gbar itself, col_{j+1} = C * col_j.
    cols = [list(gbar)]
    for _ in range(n - 1):
        prev = cols[-1]
        top = prev[n - 1]
        nxt = [OKElement.zero(spec)] + prev[: n - 1]
        for i in range(n):
            nxt[i] = nxt[i] - top * p.lows[i]
        cols.append(nxt)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    return CertifiedValue(_det(mat, spec), prec)


def res_n(f: PowerSeries, g: PowerSeries) -> CertifiedValue:
    """Resultant: product of g over the roots of f in the open unit disk.

    Requires wideg(f) certified; wideg 0 yields 1 by the empty-product
    convention. Zero iff f and g share a disk root -- but zero can only be
    asserted up to the certified precision (see common_root_test).
    """
    n = f.wideg()
    if n == 0:
        return CertifiedValue(OKElement.one(f.spec), f.spec.precision)
    fac = weierstrass_prepare(f)
    return respol(fac.p, g)


def disc_n(f: PowerSeries) -> CertifiedValue:
    """Discriminant res_n(f, f'); nonzero iff all disk roots are simple."""
    return res_n(f, f.derivative())


@dataclass(frozen=True)
class CommonRootVerdict:
    """Outcome of the common-root test at a stated pi-adic precision."""

    kind: str  # "NoCommonRoot" | "PossibleCommonRoot"
    precision: int

    def __str__(self) -> str:
        if self.kind == "NoCommonRoot":
            return "NoCommonRoot"
        return f"PossibleCommonRoot(precision {self.precision})"


def common_root_test(f: PowerSeries, g: PowerSeries) -> CommonRootVerdict:
    """Certified-nonzero resultant excludes a common disk root; a resultant
    indistinguishable from zero cannot be promoted to a proof at finite
    precision."""
    r = res_n(f, g)
    if r.certified_nonzero():
        return CommonRootVerdict("NoCommonRoot", r.precision)
    return CommonRootVerdict("PossibleCommonRoot", r.precision)
