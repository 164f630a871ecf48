import math

import pytest

from toricslope.errors import DivergentIntegralError
from toricslope.quadrature import (
    FaceIntegralSpec,
    convergence_check,
    decay_rate,
    face_integral,
    truncation_half_width,
)

TRI = ((0, 0), (1, 0), (0, 1))
HIRZ = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0))
S3PI = math.sqrt(3) * math.pi
REL = 1e-10


def beta_oracle(P, R, k=4):
    """1/4 * iterated Beta integrals of u^(P-1) v^(R-1) / (1+u+v)^k."""
    # int_0^inf v^(R-1)/(c+v)^k dv = c^(R-k) B(R, k-R), then
    # int_0^inf u^(P-1)/(1+u)^(k-R) du = B(P, k-R-P)
    beta = lambda a, b: math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return beta(R, k - R) * beta(P, k - R - P) / 4


def close(value, reference, rel):
    return abs(value - reference) <= rel * abs(reference)


class TestConvergenceCheck:
    @pytest.mark.parametrize("P, R, expected", [
        (1, 1, True),
        (4, 0, False),
        (2, 1, True),
        (0, 0, False),
        (3, 1, False),
        (1, 3, False),
    ])
    def test_unit_triangle(self, P, R, expected):
        assert convergence_check(FaceIntegralSpec(P, R, TRI)) is expected

    def test_degenerate_hull_never_converges(self):
        assert not convergence_check(FaceIntegralSpec(2, 0, ((0, 0), (1, 0))))

    def test_decay_rate_positive_iff_convergent(self):
        assert decay_rate(FaceIntegralSpec(1, 1, TRI)) > 0
        assert decay_rate(FaceIntegralSpec(4, 0, TRI)) == 0

    def test_box_grows_as_tolerance_tightens(self):
        spec = FaceIntegralSpec(1, 1, TRI)
        assert truncation_half_width(spec, 1e-12) > truncation_half_width(spec, 1e-6)


class TestClosedForms:
    def test_p2_integral(self):
        res = face_integral(FaceIntegralSpec(1, 1, TRI), REL)
        assert close(res.value, 1 / 24, REL)
        assert res.abs_error_estimate >= 0
        assert res.evaluations > 0

    def test_shifted_p2_integral(self):
        res = face_integral(FaceIntegralSpec(5, 1, ((1, 0), (1, 1), (2, 0))), REL)
        assert close(res.value, 1 / 24, REL)

    @pytest.mark.parametrize("P, R, reference", [
        (1, 1, 7 * (-9 + 2 * S3PI) / 648),
        (2, 1, (6 - S3PI) / 108),
        (1, 2, (9 - S3PI) / 324),
        (3, 1, (-9 + 2 * S3PI) / 648),
    ])
    def test_hirzebruch_closed_forms(self, P, R, reference):
        assert close(face_integral(FaceIntegralSpec(P, R, HIRZ), REL).value, reference, REL)

    @pytest.mark.parametrize("P, R", [(1, 1), (2, 1), (1, 2)])
    def test_beta_oracle(self, P, R):
        assert close(face_integral(FaceIntegralSpec(P, R, TRI), REL).value, beta_oracle(P, R), REL)

    @pytest.mark.parametrize("P, R, k", [(1, 1, 3), (1, 1, 5), (2, 2, 6), (1, 3, 6)])
    def test_beta_oracle_other_powers(self, P, R, k):
        spec = FaceIntegralSpec(P, R, TRI, power=k)
        assert close(face_integral(spec, REL).value, beta_oracle(P, R, k), REL)

    def test_tighter_tolerance_does_not_hurt(self):
        spec = FaceIntegralSpec(2, 1, HIRZ)
        ref = (6 - S3PI) / 108
        loose = abs(face_integral(spec, 1e-6).value - ref)
        tight = abs(face_integral(spec, 5e-7).value - ref)
        assert tight <= max(loose, 1e-15)
        assert loose <= 1e-6 * ref


class TestInvariances:
    @pytest.mark.parametrize("shift", [(1, 0), (0, 2), (1, 1)])
    @pytest.mark.parametrize("P, R", [(1, 1), (2, 1)])
    def test_common_monomial_shift(self, shift, P, R):
        p0, r0 = shift
        base = FaceIntegralSpec(P, R, HIRZ)
        moved = FaceIntegralSpec(P + 4 * p0, R + 4 * r0, tuple((p + p0, r + r0) for p, r in HIRZ))
        assert close(face_integral(moved, REL).value, face_integral(base, REL).value, 2 * REL)

    @pytest.mark.parametrize("P, R", [(1, 1), (2, 1), (3, 1), (1, 2)])
    def test_transpose(self, P, R):
        spec = FaceIntegralSpec(P, R, HIRZ)
        a = face_integral(spec, REL).value
        b = face_integral(spec.transposed(), REL).value
        assert close(a, b, 2 * REL)

    def test_pair_order_is_irrelevant(self):
        a = FaceIntegralSpec(2, 1, HIRZ)
        b = FaceIntegralSpec(2, 1, tuple(reversed(HIRZ)))
        assert a == b
        assert face_integral(a, REL).value == face_integral(b, REL).value


class TestErrors:
    def test_divergent(self):
        with pytest.raises(DivergentIntegralError, match="integral diverges"):
            face_integral(FaceIntegralSpec(4, 0, TRI))

    @pytest.mark.parametrize("tol", [0.0, 1.0, -1e-3])
    def test_bad_tolerance(self, tol):
        with pytest.raises(ValueError):
            face_integral(FaceIntegralSpec(1, 1, TRI), tol)

    def test_duplicate_pairs(self):
        with pytest.raises(ValueError):
            FaceIntegralSpec(1, 1, ((0, 0), (0, 0), (1, 0)))
