"""
붕괴율 추정 / 다항식 적합 테스트
"""

import numpy as np
import pytest

from ftsim.analysis.exceptions import (
    EmptyTallyError,
    InsufficientPointsError,
    PolynomialRoleError,
    RankDeficientFitError,
)
from ftsim.analysis.schemas import CrashTally, PolyRole, RateSample, TrialKind, TrialOutcome
from ftsim.analysis.services import (
    estimate_rates,
    fit_poly,
    load_fit,
    read_rate_samples,
    resample_fit,
    term_sets,
)
from ftsim.core.exceptions import InputFileError
from ftsim.core.schemas import RunMeta
from ftsim.infra.storage import write_json

META = RunMeta(version="test", config_hash="0" * 16, seed=0)


class TestCrashTally:
    """CrashTally 테스트"""

    def test_record(self):
        """결과 종류별 집계"""
        tally = CrashTally()
        kinds = (TrialKind.NONE, TrialKind.NONE, TrialKind.UNLOCATED_CRASH, TrialKind.DISCARDED)
        for kind in kinds:
            tally.record(TrialOutcome(kind))
        tally.record(TrialOutcome(TrialKind.LOCATED_CRASH, x_located_crash=True))
        assert (tally.n_unlocated, tally.n_located, tally.n_none, tally.n_discarded) == (1, 1, 2, 1)
        assert tally.total == 4

    def test_merge_is_associative(self):
        """병합 순서와 무관"""
        a = CrashTally(n_unlocated=1, n_none=5)
        b = CrashTally(n_located=2, n_discarded=1)
        c = CrashTally(n_none=3)
        assert a.merge(b).merge(c) == a.merge(b.merge(c))


class TestEstimateRates:
    """estimate_rates 테스트"""

    def test_rates(self):
        """N_U=100, N_L=0, N_N=9900"""
        # When
        estimate = estimate_rates(CrashTally(n_unlocated=100, n_located=0, n_none=9900))

        # Then
        assert estimate.unlocated == pytest.approx(0.01)
        assert estimate.sigma_unlocated == pytest.approx(0.001)
        assert estimate.located == 0.0
        assert estimate.sigma_located == 0.0

    def test_unlocated_conditioned_on_no_located(self):
        """비위치율 분모는 위치 붕괴 제외"""
        estimate = estimate_rates(CrashTally(n_unlocated=10, n_located=50, n_none=40))
        assert estimate.unlocated == pytest.approx(0.2)
        assert estimate.located == pytest.approx(0.5)

    def test_scale_equivariance(self):
        """집계를 k배 하면 비율은 같고 σ는 1/sqrt(k)배"""
        base = estimate_rates(CrashTally(n_unlocated=7, n_located=3, n_none=90))
        scaled = estimate_rates(CrashTally(n_unlocated=28, n_located=12, n_none=360))
        assert scaled.unlocated == pytest.approx(base.unlocated)
        assert scaled.located == pytest.approx(base.located)
        assert scaled.sigma_unlocated == pytest.approx(base.sigma_unlocated / 2)

    def test_empty_tally(self):
        """N_U + N_N = 0"""
        with pytest.raises(EmptyTallyError) as exc_info:
            estimate_rates(CrashTally(n_located=5))
        assert exc_info.value.status == 3


class TestTermSets:
    """term_sets 테스트"""

    @pytest.mark.parametrize(
        ("role", "code", "count"),
        [
            (PolyRole.E, "golay23", 15),
            (PolyRole.GAMMA, "golay23", 28),
            (PolyRole.GAMMA, "steane7", 21),
            (PolyRole.P, "steane7", 21),
            (PolyRole.Q, "steane7", 15),
            (PolyRole.Q, "golay23", 36),
        ],
    )
    def test_default_counts(self, role: PolyRole, code: str, count: int):
        """역할/코드별 기본 항 수"""
        assert len(term_sets(role, code)) == count

    def test_exclusions(self):
        """E, P는 u^0 항, Q는 v^0 항 제외"""
        assert all(i > 0 for i, _ in term_sets(PolyRole.E))
        assert all(i > 0 for i, _ in term_sets(PolyRole.P))
        assert all(j > 0 for _, j in term_sets(PolyRole.Q))
        assert (0, 0) in term_sets(PolyRole.GAMMA)

    def test_drop_orders(self):
        """낮은 전체 차수 제외"""
        monomials = term_sets(PolyRole.E, "golay23", drop_orders=2)
        assert len(monomials) == 14
        assert min(i + j for i, j in monomials) == 2


class TestFitPoly:
    """fit_poly 테스트"""

    @staticmethod
    def _samples(coeffs: dict[tuple[int, int], float], sigma: float = 1e-9) -> list[RateSample]:
        samples = []
        for u in np.linspace(1e-4, 1e-3, 5):
            for v in np.linspace(0.0, 1e-2, 5):
                value = sum(c * u**i * v**j for (i, j), c in coeffs.items())
                samples.append(RateSample(u=u, v=v, value=value, sigma=sigma))
        return samples

    def test_recovers_coefficients(self):
        """정확한 데이터에서 계수 복원"""
        # Given
        truth = {(1, 0): 0.003, (1, 1): 2.0, (2, 0): 5.0}
        samples = self._samples(truth)

        # When
        result = fit_poly(samples, list(truth), PolyRole.E)

        # Then
        for term in result.poly.terms:
            assert term.coeff == pytest.approx(truth[(term.i, term.j)], rel=1e-6)
        assert result.dof == 22
        assert result.residual == pytest.approx(0.0, abs=1e-6)
        assert result.poly(0.0, 0.005) == 0.0
        assert len(result.poly.domain) == 25

    def test_resample_keeps_terms(self, rng):
        """재표본 적합은 같은 항 집합"""
        samples = self._samples({(1, 0): 1.0, (2, 0): 3.0}, sigma=1e-6)
        fit = fit_poly(samples, [(1, 0), (2, 0)], PolyRole.P)
        again = resample_fit(fit, rng)
        assert again.poly.monomials == fit.poly.monomials
        assert again.poly.role is PolyRole.P

    def test_rank_deficient(self):
        """v = 0 점만으로는 u v 항을 결정할 수 없음"""
        samples = [RateSample(u=u, v=0.0, value=u, sigma=1e-3) for u in (0.1, 0.2, 0.3, 0.4)]
        with pytest.raises(RankDeficientFitError) as exc_info:
            fit_poly(samples, [(1, 0), (1, 1)], PolyRole.E)
        assert exc_info.value.extensions["dependent"] == [[1, 1]]

    def test_insufficient_points(self):
        """점 수 < 항 수"""
        samples = [RateSample(u=0.1, v=0.1, value=0.0, sigma=1.0)]
        with pytest.raises(InsufficientPointsError):
            fit_poly(samples, [(1, 0), (1, 1)], PolyRole.E)


class TestFitFiles:
    """적합 입출력 테스트"""

    def test_read_rate_samples(self, tmp_path):
        """열 위치로 읽고 σ = 0을 최소 양의 σ로 대체"""
        # Given
        path = tmp_path / "rates.csv"
        path.write_text(
            "# ftsim test\n"
            "epsilon,gamma,E,sigma_E,Gamma,sigma_Gamma\n"
            "1e-4,1e-3,0.001,0.0001,0.01,0\n"
            "2e-4,1e-3,0.002,0.0002,0.02,0.002\n",
            encoding="utf-8",
        )

        # When
        unlocated = read_rate_samples(path, unlocated=True)
        located = read_rate_samples(path, unlocated=False)

        # Then
        assert [s.value for s in unlocated] == [0.001, 0.002]
        assert [s.sigma for s in located] == [0.002, 0.002]

    def test_too_few_columns(self, tmp_path):
        """6열 미만"""
        path = tmp_path / "rates.csv"
        path.write_text("u,v,E,sigma\n0.1,0.1,0.01,0.001\n", encoding="utf-8")
        with pytest.raises(InputFileError):
            read_rate_samples(path, unlocated=True)

    def test_load_fit_role_mismatch(self, tmp_path):
        """역할이 다른 다항식 JSON"""
        # Given
        samples = [RateSample(u=u, v=0.0, value=u, sigma=1e-3) for u in (0.1, 0.2, 0.3)]
        fit = fit_poly(samples, [(1, 0)], PolyRole.E)
        path = write_json(tmp_path / "fit_E.json", fit.model_dump(mode="json"), META)

        # When / Then
        assert load_fit(path, PolyRole.E).poly.terms[0].coeff == pytest.approx(1.0)
        with pytest.raises(PolynomialRoleError) as exc_info:
            load_fit(path, PolyRole.P)
        assert exc_info.value.status == 2

    def test_load_fit_bad_document(self, tmp_path):
        """다항식 형식이 아닌 JSON"""
        path = write_json(tmp_path / "fit_E.json", {"poly": 1}, META)
        with pytest.raises(InputFileError):
            load_fit(path, PolyRole.E)
