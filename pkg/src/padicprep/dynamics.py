"""Iteration of power series in characteristic p and good lifts.

Residue-level side: for w(X) = X + sum_{i>=2} w_i X^i over F_p, the lower
ramification index i(w) is m - 1 for the first m >= 2 with w_m != 0, and
i_n(w) = i(w composed with itself p^n times). Sen's congruence
i_{n-1} = i_n mod p^n is unconditional, so the corpus check here is a bug
detector, not an experiment.

Characteristic-zero side: a lift f of w is "good for n" when all roots of
f^(p^n-fold)(X) - X in the open unit disk are simple, which is certified by a
nonzero discriminant. Goodness holds on a dense open set of lifts, so a
seeded randomized search over perturbations f = wtilde + pi*h finds a witness
quickly; the report records the discriminant valuations that certify it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BudgetExhausted,
    CompositionDomain,
    IndeterminateAtPrecision,
)
from .okfield import FieldSpec, OKElement
from .resultant import disc_n
from .series import PowerSeries


class ResidueSeries:
    """Truncated series X + sum_{i>=2} c_i X^i over F_p (c_0 = 0, c_1 = 1)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: tuple[int, ...]):
        if len(coeffs) < 2 or coeffs[0] != 0 or coeffs[1] != 1:
            raise ValueError("residue series must start with X (c_0 = 0, c_1 = 1)")
        if any(not 0 <= c < p for c in coeffs):
            raise ValueError("coefficients must be reduced modulo p")
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def from_ints(cls, p: int, coeffs, xprec: int | None = None) -> "ResidueSeries":
        coeffs = [int(c) % p for c in coeffs]
        if xprec is not None:
            coeffs = coeffs[:xprec] + [0] * (xprec - len(coeffs))
        return cls(p, tuple(coeffs))

    @property
    def xprec(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueSeries):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"ResidueSeries(p={self.p}, xprec={self.xprec})"

    def compose(self, inner: "ResidueSeries") -> "ResidueSeries":
        """self(inner(X)) mod X^min(M, M'). Horner over int64 convolutions."""
        if self.p != inner.p:
            raise ValueError("residue series over different primes")
        if inner.coeffs[0] != 0:
            raise CompositionDomain("inner series must have zero constant term")
        M = min(self.xprec, inner.xprec)
        g = np.array(inner.coeffs[:M], dtype=np.int64)
        acc = np.zeros(M, dtype=np.int64)
        for c in reversed(self.coeffs[:M]):
            acc = np.convolve(acc, g)[:M] % self.p
            acc[0] = (acc[0] + c) % self.p
        return ResidueSeries(self.p, tuple(int(x) for x in acc))

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs), "xprec": self.xprec}

    @classmethod
    def from_json(cls, obj: dict) -> "ResidueSeries":
        return cls.from_ints(int(obj["p"]), obj["coeffs"], xprec=obj.get("xprec"))


def iterate_p(w: ResidueSeries, n: int) -> ResidueSeries:
    """w composed with itself p^n times, mod X^M."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    cur = w
    for _ in range(n):
        # cur^(p-fold): p - 1 binary compositions.
        result = cur
        for _ in range(w.p - 1):
            result = result.compose(cur)
        cur = result
    return cur


def i_index(w: ResidueSeries) -> int | None:
    """Lower ramification index i(w) = m - 1 for the first m >= 2 with
    w_m != 0; None ("at least M-1") when the truncation shows none."""
    for m in range(2, w.xprec):
        if w.coeffs[m] != 0:
            return m - 1
    return None


def i_n(w: ResidueSeries, n: int) -> int | None:
    return i_index(iterate_p(w, n))


@dataclass(frozen=True)
class SenPair:
    """One congruence i_{n-1} = i_n mod p^n, or its vacuous form when both
    indices sit above the truncation."""

    n: int
    i_prev: int | None
    i: int | None
    modulus: int
    passed: bool
    vacuous: bool


def sen_check(w: ResidueSeries, n_max: int) -> list[SenPair]:
    """Verify i_{n-1} = i_n mod p^n for 1 <= n <= n_max.

    Both indices hidden by the truncation: vacuous pass. Exactly one hidden:
    the comparison is blocked and IndeterminateAtPrecision is raised.
    """
    values = []
    cur = w
    for k in range(n_max + 1):
        if k > 0:
            nxt = cur
            for _ in range(w.p - 1):
                nxt = nxt.compose(cur)
            cur = nxt
        values.append(i_index(cur))
    out = []
    for n in range(1, n_max + 1):
        prev, cur = values[n - 1], values[n]
        modulus = w.p**n
        if prev is None and cur is None:
            out.append(SenPair(n, None, None, modulus, True, True))
            continue
        if prev is None or cur is None:
            raise IndeterminateAtPrecision(
                f"i_{n-1} or i_{n} not determined below X-precision {w.xprec}"
            )
        out.append(SenPair(n, prev, cur, modulus, (prev - cur) % modulus == 0, False))
    return out


def _iterate_lift(f: PowerSeries, n: int) -> PowerSeries:
    """f^(p^n-fold) over O_K, mod (pi^N, X^M)."""
    p = f.spec.p
    cur = f
    for _ in range(n):
        result = cur
        for _ in range(p - 1):
            result = result.compose(cur)
        cur = result
    return cur


def wideg_of_iterate_minus_x(f: PowerSeries, n: int) -> int:
    """wideg(f^(p^n-fold)(X) - X); equals i_n(w) + 1 for a lift of w."""
    g = _iterate_lift(f, n)
    x = PowerSeries.monomial(f.spec, 1, g.xprec)
    return (g - x).wideg()


@dataclass(frozen=True)
class LiftReport:
    """Witness of a good lift: the accepted series, which iterate orders were
    certified, and the discriminant valuations doing the certifying."""

    lift: PowerSeries
    checked: frozenset[int]
    disc_valuations: dict[int, int]
    seed: int
    budget: int
    candidate_index: int
    candidates_tried: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "lift": self.lift.to_json(),
            "checked": sorted(self.checked),
            "disc_valuations": {str(k): v for k, v in sorted(self.disc_valuations.items())},
            "seed": self.seed,
            "budget": self.budget,
            "candidate_index": self.candidate_index,
            "candidates_tried": self.candidates_tried,
        }


def good_lift_search(
    w: ResidueSeries,
    ns,
    budget: int,
    seed: int,
    precision: int,
    xprec: int | None = None,
) -> LiftReport:
    """Search for a lift f of w with simple disk roots of f^(p^n-fold) - X
    for every n in ns.

    Candidate 0 is the naive coefficient lift; candidates k >= 1 perturb it
    by pi*h with h drawn from the seed, supported on degrees 1..max(i_n)+1
    (the region that moves the relevant discriminants) with coefficients
    uniform modulo pi^(N-1). The first certified candidate wins, so the
    result is deterministic in (seed, budget) regardless of evaluation order.
    """
    ns = sorted(set(ns))
    spec = FieldSpec.zp(w.p, precision)
    if not ns:
        lift = PowerSeries.from_ints(w.coeffs, spec, xprec=w.xprec)
        return LiftReport(lift, frozenset(), {}, seed, budget, 0, 0)

    ivals = {}
    for n in ns:
        v = i_n(w, n)
        if v is None:
            raise IndeterminateAtPrecision(
                f"i_{n}(w) not determined below X-precision {w.xprec}"
            )
        ivals[n] = v
    max_wideg = max(ivals[n] + 1 for n in ns)
    if xprec is None:
        xprec = max_wideg * (precision + 1) + 1
    support = min(max_wideg + 1, xprec - 1)

    base = [int(c) for c in w.coeffs[:xprec]] + [0] * max(0, xprec - w.xprec)
    rng = random.Random(seed)
    pi = OKElement.pi(spec)
    hi = spec.p ** max(1, precision - 1)

    for k in range(budget + 1):
        if k > 0:
            perturbed = [0] * xprec
            for deg in range(1, support + 1):
                perturbed[deg] = rng.randrange(hi)
            f = PowerSeries.from_elements(
                [
                    OKElement.from_int(c, spec) + pi * OKElement.from_int(h, spec)
                    for c, h in zip(base, perturbed)
                ],
                spec,
            )
        else:
            f = PowerSeries.from_ints(base, spec)

        vals: dict[int, int] = {}
        ok = True
        for n in ns:
            g = _iterate_lift(f, n)
            x = PowerSeries.monomial(spec, 1, g.xprec)
            d = disc_n(g - x)
            v = d.value.valuation()
            if v is None or v >= d.precision:
                ok = False
                break
            vals[n] = v
        if ok:
            return LiftReport(
                lift=f,
                checked=frozenset(ns),
                disc_valuations=vals,
                seed=seed,
                budget=budget,
                candidate_index=k,
                candidates_tried=k + 1,
            )
    raise BudgetExhausted(
        f"no certified lift within budget {budget} (not a disproof)"
    )
