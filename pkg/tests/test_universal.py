import pytest

from padicprep import (
    DistinguishedPoly,
    FieldSpec,
    IntegralityViolation,
    OKElement,
    PowerSeries,
    TruncationOverflow,
    bgw_p0,
    respol,
    respol_symmetric,
    specialize,
    universal_prepare,
    universal_ring,
    weierstrass_prepare,
)
from padicprep.universal import UniversalRing, _msym_to_elementary

from conftest import random_small, random_unit


class TestRingBasics:
    def test_inverse_relation_cancels(self):
        ring = universal_ring(1, 4, 3)
        fv = ring.monomial({"F1": 2, "V": 1})
        assert fv == ring.monomial({"F1": 1})

    def test_truncation_drops_high_order(self):
        ring = universal_ring(1, 2, 3)
        assert ring.monomial({"F0": 3}).is_zero()
        assert not ring.monomial({"F0": 2}).is_zero()

    def test_term_cap(self):
        ring = UniversalRing(
            names=("A", "B"), small=frozenset(), order=10, max_terms=3
        )
        s = ring.zero()
        with pytest.raises(TruncationOverflow):
            acc = {}
            for i in range(5):
                acc[(i, 0)] = 1
            s + type(s)(ring, acc)


class TestUniversalPrepare:
    def test_n1_order2(self):
        prep = universal_prepare(1, 2, 3)
        ring = prep.p_lows[0].ring
        expected = ring.monomial({"F0": 1, "V": 1}) + ring.monomial(
            {"F0": 2, "F2": 1, "V": 3}
        )
        assert prep.p_lows[0] == expected

    def test_n2_order1(self):
        prep = universal_prepare(2, 1, 2)
        ring = prep.p_lows[0].ring
        assert prep.p_lows[0] == ring.monomial({"F0": 1, "V": 1})
        assert prep.p_lows[1] == ring.monomial({"F1": 1, "V": 1})

    def test_distinguishedness(self):
        # every monomial of every P_i has positive small-variable degree
        for n, D, kmax in ((1, 4, 4), (2, 3, 4), (3, 2, 4)):
            prep = universal_prepare(n, D, kmax)
            for s in prep.p_lows:
                ring = s.ring
                assert not s.is_zero()
                for exps in s.terms:
                    assert ring.small_degree(exps) >= 1

    def test_reconstruction(self):
        # (X^n + P_{n-1} X^{n-1} + ... + P_0) * U = F mod (I^(D+1), window)
        for n, D, kmax in ((1, 3, 4), (2, 2, 4)):
            prep = universal_prepare(n, D, kmax)
            ring = prep.p_lows[0].ring
            MX = kmax + 1 - n
            p_coeffs = list(prep.p_lows) + [ring.one()]
            prod = [ring.zero() for _ in range(MX)]
            for i, pc in enumerate(p_coeffs):
                for j, uc in enumerate(prep.u_coeffs):
                    if i + j < MX:
                        prod[i + j] = prod[i + j] + pc * uc
            for k in range(MX):
                assert prod[k] == ring.monomial({f"F{k}": 1}), f"X^{k} mismatch"

    def test_specialize_distinguished_input_gives_zero(self):
        # F = X: F_0 = 0, F_1 = 1 specializes P_0 to 0
        spec = FieldSpec.zp(2, 8)
        prep = universal_prepare(1, 3, 3)
        asn = {
            "F0": OKElement.zero(spec),
            "F1": OKElement.one(spec),
            "F2": OKElement.zero(spec),
            "F3": OKElement.zero(spec),
        }
        out = specialize(prep.p_lows[0], asn)
        assert out.value.is_zero()

    def test_validates_arguments(self):
        with pytest.raises(ValueError):
            universal_prepare(0, 2, 3)
        with pytest.raises(ValueError):
            universal_prepare(2, 2, 1)


class TestBgw:
    def test_leading_term(self):
        assert bgw_p0(1, 3).to_json() == [{"exps": {"F0": 1}, "coeff": "1"}]

    def test_second_term(self):
        b = bgw_p0(2, 3)
        assert b.coefficient({"F0": 1}) == 1
        assert b.coefficient({"F0": 2, "F2": 1, "V": 2}) == 1
        assert len(b.terms) == 2

    def test_integrality_through_order_12(self):
        # raises IntegralityViolation on any non-integer coefficient
        b = bgw_p0(12, 12)
        assert all(isinstance(c, int) for c in b.terms.values())

    def test_normalization_is_unit_off_from_preparation(self):
        # the printed formula computes F_1 * P_0: multiplying by V matches
        # universal_prepare, the identity normalization does not
        D, kmax = 5, 5
        b = bgw_p0(D, kmax)
        prep = universal_prepare(1, D, kmax)
        ring = b.ring
        v = ring.monomial({"V": 1})
        as_is = b == prep.p_lows[0]
        unit_scaled = (v * b) == prep.p_lows[0]
        assert unit_scaled and not as_is


class TestMsymRewrite:
    def test_power_sums(self):
        # Z_(0,2) = Z1^2 + Z2^2 = e1^2 - 2 e2
        out = _msym_to_elementary((0, 2), 2)
        assert out == {(2, 0): 1, (0, 1): -2}

    def test_full_symmetric(self):
        # Z_(1,1,1) = Z1 Z2 Z3 = e3
        assert _msym_to_elementary((1, 1, 1), 3) == {(0, 0, 1): 1}


class TestRespolSymmetric:
    def test_n1_geometric_substitution(self):
        rs = respol_symmetric(1, 3, 3)
        ring = rs.ring
        expected = ring.zero()
        for k in range(4):
            expected = expected + ring.monomial({f"G{k}": 1, "P0": k}, (-1) ** k)
        assert rs == expected

    def test_n2_linear_g(self):
        rs = respol_symmetric(2, 4, 2)
        assert rs.coefficient({"G0": 2}) == 1
        assert rs.coefficient({"G0": 1, "G1": 1, "P1": 1}) == -1
        assert rs.coefficient({"G1": 2, "P0": 1}) == 1

    def test_rejects_large_n(self):
        with pytest.raises(ValueError):
            respol_symmetric(4, 4, 4)

    def test_specialization_matches_numeric_respol(self, rng):
        spec = FieldSpec.zp(2, 8)
        rs = respol_symmetric(2, 14, 3)
        for _ in range(5):
            z1, z2 = random_small(rng, spec), random_small(rng, spec)
            p = DistinguishedPoly.from_roots([z1, z2], spec)
            gvals = [random_unit(rng, spec)] + [
                OKElement.from_int(k, spec) for k in (3, 0, 7)
            ]
            g = PowerSeries.from_elements(gvals, spec, xprec=2 * 8 + 2)
            asn = {"P0": p.lows[0], "P1": p.lows[1]}
            for k, gv in enumerate(gvals):
                asn[f"G{k}"] = gv
            sym = specialize(rs, asn)
            num = respol(p, g)
            assert (sym.value - num.value).valuation() is None or (
                sym.value - num.value
            ).valuation() >= min(sym.precision, num.precision)


class TestSpecialize:
    def test_certified_precision_from_order(self):
        spec = FieldSpec.zp(2, 20)
        prep = universal_prepare(1, 3, 2)
        asn = {
            "F0": OKElement.from_int(4, spec),  # valuation 2
            "F1": OKElement.one(spec),
            "F2": OKElement.from_int(6, spec),
        }
        out = specialize(prep.p_lows[0], asn)
        assert out.precision == min(20, (3 + 1) * 2)

    def test_rejects_unit_small_variable(self):
        spec = FieldSpec.zp(2, 8)
        prep = universal_prepare(1, 2, 2)
        asn = {
            "F0": OKElement.one(spec),
            "F1": OKElement.one(spec),
            "F2": OKElement.zero(spec),
        }
        with pytest.raises(ValueError, match="valuation"):
            specialize(prep.p_lows[0], asn)

    def test_rejects_missing_variable(self):
        spec = FieldSpec.zp(2, 8)
        prep = universal_prepare(1, 2, 3)
        asn = {"F0": OKElement.from_int(2, spec), "F1": OKElement.one(spec)}
        with pytest.raises(ValueError, match="no value"):
            specialize(prep.p_lows[0], asn)

    def test_constant_term_at_zero_small_values(self):
        ring = UniversalRing(names=("A", "B"), small=frozenset({0}), order=3)
        s = ring.monomial({"B": 1}, 5) + ring.monomial({"A": 1, "B": 1}, 7)
        spec = FieldSpec.zp(3, 6)
        out = specialize(
            s, {"A": OKElement.zero(spec), "B": OKElement.from_int(2, spec)}
        )
        assert out.value.congruent(OKElement.from_int(10, spec))

    def test_coherence_with_numeric_preparation(self, rng):
        # specialize(universal P_0) == numeric P_0 mod 2^(D+1)
        D, kmax = 6, 6
        spec = FieldSpec.zp(2, 12)
        prep = universal_prepare(1, D, kmax)
        for _ in range(5):
            coeffs = [random_small(rng, spec), random_unit(rng, spec)] + [
                OKElement.from_int(rng.randrange(64), spec) for _ in range(kmax - 1)
            ]
            f = PowerSeries.from_elements(coeffs, spec, xprec=40)
            fac = weierstrass_prepare(f)
            asn = {f"F{i}": coeffs[i] for i in range(kmax + 1)}
            out = specialize(prep.p_lows[0], asn)
            diff = (out.value - fac.p.lows[0]).valuation()
            assert diff is None or diff >= out.precision
