"""Shared generators for randomized tests (seeded, reproducible)."""

import random

import pytest

from padicprep import FieldSpec, OKElement, PowerSeries


@pytest.fixture
def rng():
    return random.Random(20260809)


def make_specs(precision: int = 8) -> list[FieldSpec]:
    """Z_2, Z_3 and the ramified quadratic E = x^2 - 2."""
    return [
        FieldSpec.zp(2, precision),
        FieldSpec.zp(3, precision),
        FieldSpec(p=2, eisenstein=(-2, 0, 1), precision=precision),
    ]


def random_element(rng: random.Random, spec: FieldSpec) -> OKElement:
    return OKElement.from_coeffs(
        [rng.randrange(spec.coeff_modulus) for _ in range(spec.e)], spec
    )


def random_unit(rng: random.Random, spec: FieldSpec) -> OKElement:
    while True:
        x = random_element(rng, spec)
        if x.residue() != 0:
            return x


def random_small(rng: random.Random, spec: FieldSpec) -> OKElement:
    """Element of valuation >= 1."""
    return OKElement.pi(spec) * random_element(rng, spec)


def random_series(rng: random.Random, spec: FieldSpec, xprec: int) -> PowerSeries:
    return PowerSeries.from_elements(
        [random_element(rng, spec) for _ in range(xprec)], spec
    )


def random_series_with_wideg(
    rng: random.Random, spec: FieldSpec, xprec: int, n: int
) -> PowerSeries:
    """Random series with certified Weierstrass degree exactly n."""
    coeffs = [random_small(rng, spec) for _ in range(n)]
    coeffs.append(random_unit(rng, spec))
    coeffs.extend(random_element(rng, spec) for _ in range(xprec - n - 1))
    return PowerSeries.from_elements(coeffs, spec)


def random_unit_series(rng: random.Random, spec: FieldSpec, xprec: int) -> PowerSeries:
    coeffs = [random_unit(rng, spec)]
    coeffs.extend(random_element(rng, spec) for _ in range(xprec - 1))
    return PowerSeries.from_elements(coeffs, spec)
