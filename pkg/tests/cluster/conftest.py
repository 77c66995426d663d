"""
Cluster 테스트 픽스처
"""

import pytest

from ftsim.cluster.schemas import NoiseParams, ProtocolConfig


@pytest.fixture
def quiet() -> NoiseParams:
    """잡음 없음"""
    return NoiseParams(epsilon=0.0, gamma=0.0)


@pytest.fixture
def sure_fusion() -> ProtocolConfig:
    """항상 성공하는 융합, 예열 없음"""
    return ProtocolConfig(fusion_success=1.0, warmup_rounds=0)
