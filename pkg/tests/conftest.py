"""
테스트 공통 설정 및 픽스처

고정 시드 난수 생성기, 코드 인스턴스, 진행 표시줄 비활성화를 제공합니다.
"""

import numpy as np
import pytest

from ftsim.codes.models import CssCode
from ftsim.codes.services import golay_code, steane_code
from ftsim.core.config import settings


# ==========================================================================
# 실행 환경
# ==========================================================================


@pytest.fixture(autouse=True)
def quiet_progress(monkeypatch: pytest.MonkeyPatch) -> None:
    """테스트 중 tqdm 진행 표시줄 비활성화"""
    monkeypatch.setattr(settings, "PROGRESS", False)


@pytest.fixture
def rng() -> np.random.Generator:
    """고정 시드 난수 생성기"""
    return np.random.default_rng(20240611)


# ==========================================================================
# 코드 픽스처
# ==========================================================================


@pytest.fixture
def steane() -> CssCode:
    """Steane 7큐비트 코드"""
    return steane_code()


@pytest.fixture
def golay() -> CssCode:
    """Golay 23큐비트 코드"""
    return golay_code()
