"""Truncated power series over O_K and their Newton polygons.

A series is known modulo (pi^N, X^M): N comes from the field spec, M is the
number of stored coefficients. Operations never extend M silently; products
and compositions truncate to the shortest operand.

The Weierstrass degree (index of the first unit coefficient) is exact because
unit-ness is a residue-level test. Root counting in the open unit disk and
the Newton polygon both hang off it: a series with wideg n has exactly n
roots in the open disk, and the polygon's positive slopes list their exact
valuations where the truncation determines them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CompositionDomain, InsufficientXPrecision, WidegNotCertified
from .okfield import FieldSpec, OKElement, _reduce_vec


class PowerSeries:
    """Immutable truncated series c_0 + c_1 X + ... + c_{M-1} X^{M-1}.

    Coefficients at degree >= M are unknown (treated as O(pi^N) only where an
    operation's tail bound says so); callers asserting that they vanish should
    pad with zeros.
    """

    __slots__ = ("coeffs", "spec")

    def __init__(self, coeffs: tuple[OKElement, ...], spec: FieldSpec):
        self.coeffs = coeffs
        self.spec = spec

    @classmethod
    def from_elements(cls, coeffs, spec: FieldSpec, xprec: int | None = None) -> "PowerSeries":
        coeffs = list(coeffs)
        if xprec is not None:
            zero = OKElement.zero(spec)
            coeffs = coeffs[:xprec] + [zero] * (xprec - len(coeffs))
        return cls(tuple(coeffs), spec)

    @classmethod
    def from_ints(cls, ints, spec: FieldSpec, xprec: int | None = None) -> "PowerSeries":
        return cls.from_elements(
            [OKElement.from_int(int(n), spec) for n in ints], spec, xprec
        )

    @classmethod
    def zero(cls, spec: FieldSpec, xprec: int) -> "PowerSeries":
        return cls((OKElement.zero(spec),) * xprec, spec)

    @classmethod
    def monomial(cls, spec: FieldSpec, degree: int, xprec: int) -> "PowerSeries":
        if degree >= xprec:
            raise InsufficientXPrecision(
                f"monomial degree {degree} needs xprec > {degree}, got {xprec}"
            )
        zero = OKElement.zero(spec)
        coeffs = [zero] * xprec
        coeffs[degree] = OKElement.one(spec)
        return cls(tuple(coeffs), spec)

    @property
    def xprec(self) -> int:
        return len(self.coeffs)

    def _check_spec(self, other: "PowerSeries") -> None:
        if self.spec is not other.spec and self.spec != other.spec:
            raise ValueError("series belong to different field specs")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_spec(other)
        return PowerSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.spec
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_spec(other)
        return PowerSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.spec
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-a for a in self.coeffs), self.spec)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_spec(other)
        spec = self.spec
        M = min(len(self.coeffs), len(other.coeffs))
        e = spec.e
        q = spec.coeff_modulus
        if e == 1:
            fa = [c.coeffs[0] for c in self.coeffs[:M]]
            ga = [c.coeffs[0] for c in other.coeffs[:M]]
            out = []
            for k in range(M):
                s = 0
                for i in range(k + 1):
                    s += fa[i] * ga[k - i]
                out.append(OKElement((s % q,), spec))
            return PowerSeries(tuple(out), spec)
        fa = [c.coeffs for c in self.coeffs[:M]]
        ga = [c.coeffs for c in other.coeffs[:M]]
        out = []
        width = 2 * e - 1
        for k in range(M):
            vec = [0] * width
            for i in range(k + 1):
                ai = fa[i]
                bj = ga[k - i]
                for s, av in enumerate(ai):
                    if av:
                        for t, bv in enumerate(bj):
                            vec[s + t] += av * bv
            out.append(OKElement(_reduce_vec(vec, spec), spec))
        return PowerSeries(tuple(out), spec)

    def scale(self, c: OKElement) -> "PowerSeries":
        return PowerSeries(tuple(c * a for a in self.coeffs), self.spec)

    def truncate(self, xprec: int) -> "PowerSeries":
        if xprec >= len(self.coeffs):
            return self
        return PowerSeries(self.coeffs[:xprec], self.spec)

    def pad(self, xprec: int) -> "PowerSeries":
        """Extend with exact zeros; asserts the tail is known to vanish."""
        if xprec <= len(self.coeffs):
            return self.truncate(xprec)
        zero = OKElement.zero(self.spec)
        return PowerSeries(self.coeffs + (zero,) * (xprec - len(self.coeffs)), self.spec)

    def shift_down(self, n: int) -> "PowerSeries":
        """Drop the first n coefficients (divide by X^n); X-precision M - n."""
        return PowerSeries(self.coeffs[n:], self.spec)

    def low_part(self, n: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[:n], self.spec)

    def derivative(self) -> "PowerSeries":
        if len(self.coeffs) == 0:
            raise InsufficientXPrecision("cannot differentiate an empty truncation")
        spec = self.spec
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(OKElement.from_int(i, spec) * self.coeffs[i])
        return PowerSeries(tuple(out), spec)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """Horner evaluation of self at ``inner``; requires inner(0) ~ 0."""
        self._check_spec(inner)
        if inner.xprec == 0 or inner.coeffs[0].valuation() is not None:
            raise CompositionDomain(
                "inner series must have constant term certified zero"
            )
        M = min(self.xprec, inner.xprec)
        if M == 0:
            return PowerSeries((), self.spec)
        g = inner.truncate(M)
        acc = PowerSeries.zero(self.spec, M)
        for c in reversed(self.coeffs[:M]):
            acc = acc * g
            acc = PowerSeries((acc.coeffs[0] + c,) + acc.coeffs[1:], self.spec)
        return acc

    def evaluate(self, z: OKElement) -> OKElement:
        """Horner evaluation at a point of O_K (no tail bound applied)."""
        acc = OKElement.zero(self.spec)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def invert(self) -> "PowerSeries":
        """Inverse series modulo (pi^N, X^M); requires a unit constant term."""
        if len(self.coeffs) == 0:
            raise InsufficientXPrecision("cannot invert an empty truncation")
        b0 = self.coeffs[0].invert_unit()
        out = [b0]
        for k in range(1, len(self.coeffs)):
            s = OKElement.zero(self.spec)
            for i in range(1, k + 1):
                s = s + self.coeffs[i] * out[k - i]
            out.append(-(b0 * s))
        return PowerSeries(tuple(out), self.spec)

    def wideg(self) -> int:
        """Weierstrass degree: index of the first unit coefficient.

        Exact whenever it exists below M, because unit-ness is a residue
        test. Raises WidegNotCertified otherwise: the truncation cannot
        distinguish wideg >= M from +infinity.
        """
        for i, c in enumerate(self.coeffs):
            if c.residue() != 0:
                return i
        raise WidegNotCertified(
            f"no unit coefficient below X-precision {len(self.coeffs)}"
        )

    def count_roots_open_disk(self) -> int:
        """Number of roots in the open unit disk of C_p, with multiplicity."""
        return self.wideg()

    def newton_polygon(self) -> "NewtonPolygon":
        return newton_polygon(self)

    def congruent(self, other: "PowerSeries") -> bool:
        """Congruence modulo (pi^N, X^min(M_self, M_other))."""
        self._check_spec(other)
        M = min(len(self.coeffs), len(other.coeffs))
        return all(
            (self.coeffs[i] - other.coeffs[i]).valuation() is None for i in range(M)
        )

    def __repr__(self) -> str:
        return f"PowerSeries(xprec={self.xprec}, p={self.spec.p}, e={self.spec.e})"

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "coeffs": [c.to_json() for c in self.coeffs],
            "xprec": self.xprec,
        }

    @classmethod
    def from_json(cls, obj: dict, spec: FieldSpec | None = None) -> "PowerSeries":
        if spec is None:
            spec = FieldSpec.from_json(obj["field"])
        coeffs = [OKElement.from_json(c, spec) for c in obj["coeffs"]]
        return cls.from_elements(coeffs, spec, xprec=obj.get("xprec"))


@dataclass(frozen=True)
class NewtonPolygon:
    """Positive-slope part of the Newton polygon, in hull order.

    Slopes are root valuations (negated geometric slopes of the lower hull of
    (i, val c_i)), so they strictly decrease along ``segments`` while the
    geometric slopes strictly increase. Only segments fully determined at
    precision (N, M) are listed; roots hiding behind coefficients
    indistinguishable from zero are accounted for by ``origin_multiplicity``
    (they sit at valuations >= ``certified_up_to``).
    """

    segments: tuple[tuple[Fraction, int], ...]
    origin_multiplicity: int
    certified_up_to: Fraction | None
    disk_roots: int

    def total_segment_length(self) -> int:
        return sum(length for _, length in self.segments)


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(f: PowerSeries) -> NewtonPolygon:
    """Lower convex hull of certified coefficient valuations up to wideg.

    A segment is emitted only if no admissible value of the uncertified low
    coefficients (all O(pi^N)) could cut it off the hull: the pessimistic
    phantom point (0, N) must lie strictly above the segment's supporting
    line. With i_0 the index of the first certified coefficient, the i_0
    roots unaccounted for by segments have valuation >= certified_up_to.
    """
    n = f.wideg()
    N = f.spec.precision
    points = []
    for i in range(n + 1):
        v = f.coeffs[i].valuation()
        if v is not None:
            points.append((i, v))
    i0 = points[0][0]
    hull = _lower_hull(points)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if i0 > 0:
            # Phantom (0, N) must stay strictly above the supporting line.
            if N * (x2 - x1) <= y1 * (x2 - x1) + (y1 - y2) * x1:
                continue
        segments.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    certified = None
    if i0 > 0:
        certified = max(Fraction(N - v, x) for x, v in points)
    return NewtonPolygon(
        segments=tuple(segments),
        origin_multiplicity=i0,
        certified_up_to=certified,
        disk_roots=n,
    )
