"""Truncated universal Weierstrass/resultant formulas over Z.

The coefficient ring for degree-n preparation is Z[F_n, F_n^{-1}, F_{n+1},
...][[F_0, ..., F_{n-1}]]. Computable truncations keep a finite variable
window F_0..F_kmax (higher variables set to 0), adjoin the formal inverse V
of F_n with the relation F_n * V = 1 applied during normalization, and drop
every monomial whose total degree in the "small" variables F_0..F_{n-1}
exceeds the truncation order D -- i.e. work modulo I^(D+1) for I the ideal
the small variables generate.

Coefficients are exact Python integers, never reduced, so integrality claims
are testable. Specializing a truncation at O_K values with small-variable
valuations >= 1 certifies the result modulo pi^min(N, (D+1)*minval) -- the
discarded tail lies in I^(D+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import IntegralityViolation, TruncationOverflow
from .okfield import CertifiedValue, OKElement


@dataclass(frozen=True)
class UniversalRing:
    """Variable layout and truncation policy shared by a family of series."""

    names: tuple[str, ...]
    small: frozenset[int]
    order: int
    inverse_pair: tuple[int, int] | None = None
    max_terms: int = 500_000

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "UniversalSeries":
        return UniversalSeries(self, {})

    def one(self) -> "UniversalSeries":
        return UniversalSeries(self, {(0,) * len(self.names): 1})

    def monomial(self, exps: dict[str, int], coeff: int = 1) -> "UniversalSeries":
        vec = [0] * len(self.names)
        for name, e in exps.items():
            vec[self.index(name)] = e
        return UniversalSeries(self, {tuple(vec): coeff})

    def small_degree(self, exps: tuple[int, ...]) -> int:
        return sum(exps[i] for i in self.small)


def _normalize(ring: UniversalRing, terms: dict) -> dict:
    out: dict[tuple[int, ...], int] = {}
    pair = ring.inverse_pair
    for exps, coeff in terms.items():
        if coeff == 0:
            continue
        if ring.small_degree(exps) > ring.order:
            continue
        if pair is not None:
            i, j = pair
            k = min(exps[i], exps[j])
            if k:
                vec = list(exps)
                vec[i] -= k
                vec[j] -= k
                exps = tuple(vec)
        out[exps] = out.get(exps, 0) + coeff
        if out[exps] == 0:
            del out[exps]
    if len(out) > ring.max_terms:
        raise TruncationOverflow(
            f"term count {len(out)} exceeds cap {ring.max_terms}"
        )
    return out


class UniversalSeries:
    """Sparse multivariate truncation with exact integer coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: UniversalRing, terms: dict):
        self.ring = ring
        self.terms = _normalize(ring, terms)

    def _check(self, other: "UniversalSeries") -> None:
        if self.ring != other.ring:
            raise ValueError("series belong to different universal rings")

    def __add__(self, other: "UniversalSeries") -> "UniversalSeries":
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return UniversalSeries(self.ring, terms)

    def __sub__(self, other: "UniversalSeries") -> "UniversalSeries":
        return self + (-other)

    def __neg__(self) -> "UniversalSeries":
        return UniversalSeries(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "UniversalSeries") -> "UniversalSeries":
        self._check(other)
        ring = self.ring
        out: dict[tuple[int, ...], int] = {}
        # Skip products that land beyond the truncation order outright.
        for e1, c1 in self.terms.items():
            d1 = ring.small_degree(e1)
            for e2, c2 in other.terms.items():
                if d1 + ring.small_degree(e2) > ring.order:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return UniversalSeries(ring, out)

    def scale(self, c: int) -> "UniversalSeries":
        return UniversalSeries(self.ring, {e: c * v for e, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniversalSeries):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def coefficient(self, exps: dict[str, int]) -> int:
        vec = [0] * len(self.ring.names)
        for name, e in exps.items():
            vec[self.ring.index(name)] = e
        return self.terms.get(tuple(vec), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Graded-lex order (total degree, then exponent vector), ascending."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "UniversalSeries(0)"
        bits = []
        for exps, coeff in self.sorted_terms()[:6]:
            mono = "*".join(
                f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                for i, e in enumerate(exps)
                if e
            )
            bits.append(f"{coeff}*{mono}" if mono else str(coeff))
        tail = " + ..." if len(self.terms) > 6 else ""
        return "UniversalSeries(" + " + ".join(bits) + tail + ")"

    def to_json(self) -> list[dict]:
        out = []
        for exps, coeff in self.sorted_terms():
            d = {
                self.ring.names[i]: e for i, e in enumerate(exps) if e
            }
            out.append({"exps": d, "coeff": str(coeff)})
        return out


def _invert_order_zero_unit(s: UniversalSeries) -> UniversalSeries:
    """Invert a series whose order-0 part is a single +-1 monomial in the
    inverse pair; the rest is a geometric series in the small-positive tail."""
    ring = s.ring
    head = [(e, c) for e, c in s.terms.items() if ring.small_degree(e) == 0]
    if len(head) != 1 or head[0][1] not in (1, -1):
        raise ValueError("series is not invertible in the truncated ring")
    exps, coeff = head[0]
    if any(e for i, e in enumerate(exps) if ring.inverse_pair is None or i not in ring.inverse_pair):
        raise ValueError("order-0 head involves non-invertible variables")
    inv_vec = [0] * len(ring.names)
    if ring.inverse_pair is not None:
        i, j = ring.inverse_pair
        inv_vec[i], inv_vec[j] = exps[j], exps[i]
    m_inv = UniversalSeries(ring, {tuple(inv_vec): coeff})
    w = (m_inv * s) - ring.one()
    acc = ring.one()
    power = ring.one()
    for _ in range(ring.order):
        power = power * (-w)
        if power.is_zero():
            break
        acc = acc + power
    return acc * m_inv


# -- series in X over a universal ring -------------------------------------


def _xmul(a: list, b: list, ring: UniversalRing, M: int) -> list:
    out = [ring.zero() for _ in range(M)]
    for i, ai in enumerate(a[:M]):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b[: M - i]):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def _xinvert(a: list, ring: UniversalRing, M: int) -> list:
    b0 = _invert_order_zero_unit(a[0])
    out = [b0]
    for k in range(1, M):
        s = ring.zero()
        for i in range(1, k + 1):
            s = s + a[i] * out[k - i]
        out.append(-(b0 * s))
    return out


@dataclass(frozen=True)
class UniversalPreparation:
    """P_0..P_{n-1} and the unit series U of the universal factorization,
    truncated at order D in the small variables and at the kmax window."""

    n: int
    order: int
    kmax: int
    p_lows: tuple[UniversalSeries, ...]
    u_coeffs: tuple[UniversalSeries, ...]


def universal_ring(n: int, order: int, kmax: int, max_terms: int = 500_000) -> UniversalRing:
    names = tuple(f"F{i}" for i in range(kmax + 1)) + ("V",)
    return UniversalRing(
        names=names,
        small=frozenset(range(n)),
        order=order,
        inverse_pair=(n, kmax + 1),
        max_terms=max_terms,
    )


def universal_prepare(n: int, D: int, kmax: int, max_terms: int = 500_000) -> UniversalPreparation:
    """Universal Weierstrass preparation of F = sum F_i X^i, truncated.

    Runs the same successive-approximation division as the numeric module,
    over sparse integer series: each sweep raises the small-variable order by
    one, so the result is exact modulo I^(D+1) (variables above kmax set to
    zero). The unit U is returned to X-degree kmax - n.
    """
    if n < 1 or D < 1 or kmax < n:
        raise ValueError("need n >= 1, D >= 1, kmax >= n")
    ring = universal_ring(n, D, kmax, max_terms)
    MX = kmax + 1
    f = [ring.monomial({f"F{i}": 1}) for i in range(MX)]
    t = f[:n] + [ring.zero()] * (MX - n)
    e = f[n:]

    sweep = 0
    try:
        einv = _xinvert(e, ring, MX - n)
        q = [ring.zero()] * MX
        r = [ring.zero()] * n
        cur = [ring.zero()] * MX
        cur[n] = ring.one()
        for sweep in range(D + 2):
            if all(c.is_zero() for c in cur):
                break
            for i in range(n):
                r[i] = r[i] + cur[i]
            qk = _xmul(cur[n:] + [ring.zero()] * n, einv + [ring.zero()] * n, ring, MX)
            q = [a + b for a, b in zip(q, qk)]
            cur = [-c for c in _xmul(qk, t, ring, MX)]
        else:
            raise RuntimeError("universal division failed to terminate")
        u = _xinvert(q[: MX - n] if MX - n > 0 else q, ring, MX - n)
    except TruncationOverflow as exc:
        raise TruncationOverflow(str(exc), order_reached=max(0, sweep - 1)) from exc
    return UniversalPreparation(
        n=n,
        order=D,
        kmax=kmax,
        p_lows=tuple(-ri for ri in r),
        u_coeffs=tuple(u),
    )


def _partitions(m: int):
    """Partitions of m as multiplicity dicts {part: count}."""

    def rec(remaining: int, max_part: int):
        if remaining == 0:
            yield {}
            return
        for part in range(min(remaining, max_part), 0, -1):
            for rest in rec(remaining - part, part):
                d = dict(rest)
                d[part] = d.get(part, 0) + 1
                yield d

    yield from rec(m, m)


def bgw_p0(D: int, kmax: int, max_terms: int = 500_000) -> UniversalSeries:
    """The displayed n = 1 closed formula, truncated at F_0-degree D.

    Every coefficient (m+j)!/((m+1)! i_1! ... i_m!) is checked to be an exact
    integer along the way; a failure would indicate a transcription bug and
    raises IntegralityViolation. Partitions with parts above the kmax window
    are dropped (their variables are set to zero by the truncation).
    """
    if D < 1:
        raise ValueError("need D >= 1")
    ring = universal_ring(1, D, kmax, max_terms)
    acc = ring.zero()
    for m in range(D):
        for mults in _partitions(m):
            if any(part + 1 > kmax for part in mults):
                continue
            j = sum(mults.values())
            denom = math.factorial(m + 1)
            for cnt in mults.values():
                denom *= math.factorial(cnt)
            coeff = Fraction(math.factorial(m + j), denom)
            if coeff.denominator != 1:
                raise IntegralityViolation(
                    f"non-integer coefficient {coeff} at m={m}, partition {mults}"
                )
            exps = {"F0": m + 1, "V": m + j}
            for part, cnt in mults.items():
                exps[f"F{part + 1}"] = cnt
            sign = -1 if (m + j) % 2 else 1
            acc = acc + ring.monomial(exps, sign * int(coeff))
    return acc


# -- symmetric-function construction of the polynomial resultant -----------


def _expand_elementary(n: int) -> list[dict[tuple[int, ...], int]]:
    """e_0..e_n in n root variables, as exponent-tuple dicts."""
    out = [{(0,) * n: 1}]
    for k in range(1, n + 1):
        d: dict[tuple[int, ...], int] = {}
        for subset in _subsets(n, k):
            vec = [0] * n
            for i in subset:
                vec[i] = 1
            d[tuple(vec)] = 1
        out.append(d)
    return out


def _subsets(n: int, k: int):
    def rec(start, left):
        if left == 0:
            yield []
            return
        for i in range(start, n - left + 1):
            for rest in rec(i + 1, left - 1):
                yield [i] + rest

    yield from rec(0, k)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            out[key] = out.get(key, 0) + c1 * c2
            if out[key] == 0:
                del out[key]
    return out


def _msym_to_elementary(d: tuple[int, ...], n: int) -> dict[tuple[int, ...], int]:
    """Rewrite the monomial symmetric polynomial Z_d in e_1..e_n.

    Gauss descent on the lex-leading term; returns exponent tuples of
    (e_1, ..., e_n) with integer coefficients.
    """
    elem = _expand_elementary(n)
    poly: dict[tuple[int, ...], int] = {}
    for perm in set(permutations(d)):
        poly[perm] = 1
    result: dict[tuple[int, ...], int] = {}
    while poly:
        lam = max(poly)
        c = poly[lam]
        epows = tuple(
            lam[i] - (lam[i + 1] if i + 1 < n else 0) for i in range(n)
        )
        result[epows] = result.get(epows, 0) + c
        sub = {(0,) * n: c}
        for i, a in enumerate(epows):
            for _ in range(a):
                sub = _poly_mul(sub, elem[i + 1])
        for e, cc in sub.items():
            poly[e] = poly.get(e, 0) - cc
            if poly[e] == 0:
                del poly[e]
    return result


def respol_symmetric(
    n: int, dmax: int, gmax: int, max_terms: int = 500_000
) -> UniversalSeries:
    """Product of g over the roots of a monic degree-n polynomial, as a
    truncated series in P_0..P_{n-1} with Z[G_0..G_gmax] coefficients.

    Enumerates exponent multisets d with d_1 <= ... <= d_n <= gmax and total
    <= dmax; every term of the rewritten Z_d has P-degree at least
    (d_1+...+d_n)/n, so the output is complete exactly up to P-degree
    dmax // n and is truncated there.
    """
    if not 1 <= n <= 3:
        raise ValueError("supported for 1 <= n <= 3")
    names = tuple(f"P{i}" for i in range(n)) + tuple(f"G{k}" for k in range(gmax + 1))
    ring = UniversalRing(
        names=names,
        small=frozenset(range(n)),
        order=dmax // n,
        inverse_pair=None,
        max_terms=max_terms,
    )
    acc = ring.zero()
    for d in _multisets(n, dmax, gmax):
        sd_exps = {}
        for k in d:
            sd_exps[f"G{k}"] = sd_exps.get(f"G{k}", 0) + 1
        sd = ring.monomial(sd_exps)
        zd = ring.zero()
        for epows, c in _msym_to_elementary(tuple(d), n).items():
            # e_i = (-1)^i P_{n-i}
            sign = 1
            exps: dict[str, int] = {}
            for i, a in enumerate(epows):
                if a:
                    if (i + 1) % 2 == 1:
                        sign *= (-1) ** a
                    exps[f"P{n - (i + 1)}"] = a
            zd = zd + ring.monomial(exps, sign * c)
        acc = acc + sd * zd
    return acc


def _multisets(n: int, dmax: int, gmax: int):
    def rec(slots: int, lo: int, remaining: int):
        if slots == 0:
            yield []
            return
        for v in range(lo, min(gmax, remaining) + 1):
            for rest in rec(slots - 1, v, remaining - v):
                yield [v] + rest

    yield from rec(n, 0, dmax)


def specialize(s: UniversalSeries, assignment: dict[str, OKElement]) -> CertifiedValue:
    """Evaluate a truncation at O_K values.

    Small variables must take values of valuation >= 1 (the series converges
    I-adically); the inverse variable may be omitted and is derived from its
    partner, which must be a unit. The certified precision is
    min(N, (D+1) * min small valuation), reflecting the discarded I^(D+1)
    tail.
    """
    ring = s.ring
    values: list[OKElement | None] = [None] * len(ring.names)
    for name, val in assignment.items():
        values[ring.index(name)] = val
    if ring.inverse_pair is not None:
        i, j = ring.inverse_pair
        if values[j] is None and values[i] is not None:
            values[j] = values[i].invert_unit()
    used = set()
    for exps in s.terms:
        for idx, e in enumerate(exps):
            if e:
                used.add(idx)
    for idx in sorted(used):
        if values[idx] is None:
            raise ValueError(f"no value assigned to variable {ring.names[idx]}")
    some = [v for v in values if v is not None]
    if not some:
        raise ValueError("assignment is empty")
    spec = some[0].spec
    N = spec.precision

    min_small = N
    for idx in ring.small:
        v = values[idx]
        if v is None:
            continue
        val = v.valuation()
        if val is None:
            val = N
        if val < 1:
            raise ValueError(
                f"value for {ring.names[idx]} must have valuation >= 1"
            )
        min_small = min(min_small, val)

    acc = OKElement.zero(spec)
    for exps, coeff in s.terms.items():
        term = OKElement.from_int(coeff, spec)
        for idx, e in enumerate(exps):
            if e:
                term = term * values[idx] ** e
        acc = acc + term
    prec = min(N, (ring.order + 1) * min_small)
    return CertifiedValue(acc, prec)
