"""Exact finite-precision arithmetic in the integers of a ramified p-adic field.

The field K is a totally ramified extension of Q_p cut out by a monic
Eisenstein polynomial E of degree e, so O_K = Z_p[pi]/(E(pi)) and the residue
field is F_p. An element x = a_0 + a_1*pi + ... + a_{e-1}*pi^(e-1) is stored
through its Z_p-coordinates, each reduced modulo p^B where

    B = ceil(N/e) + 1

and N is the pi-adic working precision. The extra digit absorbs carries when
degree->=e terms are folded back through E(pi) = 0, so every ring operation is
exact modulo pi^N (indeed modulo pi^(e*B)).

Valuations are exact below N: the candidates e*val_p(a_i) + i are pairwise
distinct modulo e, so no ultrametric cancellation can occur between
coordinates and val(x) is their plain minimum. An element whose candidates
all reach N is indistinguishable from zero and is reported as such (valuation
None), never as exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NotAUnit


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Description of O_K: prime, Eisenstein polynomial, working precision.

    Attributes:
        p: the residue characteristic (a prime).
        eisenstein: coefficients c_0..c_e of the monic Eisenstein polynomial,
            constant term first. Requires c_e = 1, p | c_i for i < e and
            p^2 not dividing c_0.
        precision: the pi-adic working precision N >= 1. All operation
            contracts are stated modulo pi^N.
    """

    p: int
    eisenstein: tuple[int, ...]
    precision: int

    def __post_init__(self):
        object.__setattr__(self, "eisenstein", tuple(int(c) for c in self.eisenstein))
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        cs = self.eisenstein
        if len(cs) < 2:
            raise ValueError("eisenstein polynomial must have degree >= 1")
        if cs[-1] != 1:
            raise ValueError("eisenstein polynomial must be monic")
        if any(c % self.p != 0 for c in cs[:-1]):
            raise ValueError("all non-leading coefficients must be divisible by p")
        if cs[0] % (self.p * self.p) == 0:
            raise ValueError("constant term must not be divisible by p^2")

    @classmethod
    def zp(cls, p: int, precision: int) -> "FieldSpec":
        """The unramified base case O_K = Z_p, with E(x) = x - p."""
        return cls(p=p, eisenstein=(-p, 1), precision=precision)

    @property
    def e(self) -> int:
        """Ramification index: degree of the Eisenstein polynomial."""
        return len(self.eisenstein) - 1

    @cached_property
    def coeff_precision(self) -> int:
        """p-adic precision B = ceil(N/e) + 1 of the stored coordinates."""
        return -(-self.precision // self.e) + 1

    @cached_property
    def coeff_modulus(self) -> int:
        return self.p ** self.coeff_precision

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "eisenstein": list(self.eisenstein),
            "precision": self.precision,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return cls(
            p=int(obj["p"]),
            eisenstein=tuple(int(c) for c in obj["eisenstein"]),
            precision=int(obj["precision"]),
        )


def _reduce_vec(vec: list[int], spec: FieldSpec) -> tuple[int, ...]:
    """Fold pi-degrees >= e through E(pi) = 0 and reduce modulo p^B.

    ``vec`` may have any length up to 2e-1; folding is top-down, which
    terminates because each fold only feeds strictly lower degrees.
    """
    e = spec.e
    cs = spec.eisenstein
    for d in range(len(vec) - 1, e - 1, -1):
        c = vec[d]
        if c:
            vec[d] = 0
            base = d - e
            for i in range(e):
                vec[base + i] -= c * cs[i]
    q = spec.coeff_modulus
    out = vec[:e]
    if len(out) < e:
        out.extend([0] * (e - len(out)))
    return tuple(a % q for a in out)


class OKElement:
    """An element of O_K known modulo pi^N.

    Immutable value; all operations return new elements. The constructor
    trusts its input -- use :meth:`from_coeffs` or :meth:`from_int` for
    unnormalized data.
    """

    __slots__ = ("coeffs", "spec")

    def __init__(self, coeffs: tuple[int, ...], spec: FieldSpec):
        self.coeffs = coeffs
        self.spec = spec

    @classmethod
    def from_coeffs(cls, coeffs, spec: FieldSpec) -> "OKElement":
        coeffs = [int(a) for a in coeffs]
        if len(coeffs) > spec.e:
            return cls(_reduce_vec(coeffs, spec), spec)
        q = spec.coeff_modulus
        coeffs.extend([0] * (spec.e - len(coeffs)))
        return cls(tuple(a % q for a in coeffs), spec)

    @classmethod
    def from_int(cls, n: int, spec: FieldSpec) -> "OKElement":
        vec = [n % spec.coeff_modulus] + [0] * (spec.e - 1)
        return cls(tuple(vec), spec)

    @classmethod
    def zero(cls, spec: FieldSpec) -> "OKElement":
        return cls((0,) * spec.e, spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> "OKElement":
        return cls.from_int(1, spec)

    @classmethod
    def pi(cls, spec: FieldSpec) -> "OKElement":
        """The uniformizer. For e = 1 this is -c_0 (= p when E = x - p)."""
        if spec.e == 1:
            return cls.from_int(-spec.eisenstein[0], spec)
        return cls((0, 1) + (0,) * (spec.e - 2), spec)

    def _check_spec(self, other: "OKElement") -> None:
        if self.spec is not other.spec and self.spec != other.spec:
            raise ValueError("operands belong to different field specs")

    def __add__(self, other: "OKElement") -> "OKElement":
        self._check_spec(other)
        q = self.spec.coeff_modulus
        return OKElement(
            tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)), self.spec
        )

    def __sub__(self, other: "OKElement") -> "OKElement":
        self._check_spec(other)
        q = self.spec.coeff_modulus
        return OKElement(
            tuple((a - b) % q for a, b in zip(self.coeffs, other.coeffs)), self.spec
        )

    def __neg__(self) -> "OKElement":
        q = self.spec.coeff_modulus
        return OKElement(tuple((-a) % q for a in self.coeffs), self.spec)

    def __mul__(self, other: "OKElement") -> "OKElement":
        self._check_spec(other)
        spec = self.spec
        e = spec.e
        a = self.coeffs
        b = other.coeffs
        if e == 1:
            return OKElement(((a[0] * b[0]) % spec.coeff_modulus,), spec)
        vec = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    vec[i + j] += ai * bj
        return OKElement(_reduce_vec(vec, spec), spec)

    def __pow__(self, n: int) -> "OKElement":
        if n < 0:
            return self.invert_unit() ** (-n)
        result = OKElement.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        # Representation equality; the semantic comparison is congruent().
        if not isinstance(other, OKElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.spec == other.spec

    def __hash__(self):
        return hash((self.coeffs, self.spec))

    def __repr__(self) -> str:
        return f"OKElement({list(self.coeffs)}, p={self.spec.p}, e={self.spec.e})"

    def valuation(self) -> int | None:
        """Exact pi-adic valuation if < N, else None ("at least N").

        None means the element is indistinguishable from 0 at precision N.
        """
        spec = self.spec
        best = None
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            v = 0
            while a % spec.p == 0:
                a //= spec.p
                v += 1
            cand = spec.e * v + i
            if best is None or cand < best:
                best = cand
        if best is None or best >= spec.precision:
            return None
        return best

    def is_zero(self) -> bool:
        """True when the element is indistinguishable from 0 modulo pi^N."""
        return self.valuation() is None

    def residue(self) -> int:
        """Image in the residue field F_p. Exact at every precision N >= 1."""
        return self.coeffs[0] % self.spec.p

    def is_unit(self) -> bool:
        return self.residue() != 0

    def invert_unit(self) -> "OKElement":
        """Inverse modulo pi^N (in fact modulo the full stored precision).

        Starts from the inverse of the residue and Newton-lifts: each sweep
        y <- y*(2 - x*y) doubles the valuation of 1 - x*y.
        """
        r = self.residue()
        if r == 0:
            raise NotAUnit("element has positive valuation, no inverse in O_K")
        spec = self.spec
        y = OKElement.from_int(pow(r, -1, spec.p), spec)
        two = OKElement.from_int(2, spec)
        known = 1
        target = spec.e * spec.coeff_precision
        while known < target:
            y = y * (two - self * y)
            known *= 2
        return y

    def congruent(self, other: "OKElement") -> bool:
        """Equality modulo pi^N -- the only meaningful comparison."""
        return (self - other).valuation() is None

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, obj, spec: FieldSpec) -> "OKElement":
        if isinstance(obj, (int, str)):
            return cls.from_int(int(obj), spec)
        return cls.from_coeffs([int(a) for a in obj], spec)


@dataclass(frozen=True)
class CertifiedValue:
    """An O_K value together with the pi-adic precision it is certified to.

    ``precision`` never exceeds spec.precision; it drops when an input's
    X-truncation only supports a weaker tail bound.
    """

    value: OKElement
    precision: int

    def certified_nonzero(self) -> bool:
        v = self.value.valuation()
        return v is not None and v < self.precision
