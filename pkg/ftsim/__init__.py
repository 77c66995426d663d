"""
ftsim: 광학 클러스터 상태 결함 허용 임계값 시뮬레이터

모듈러 모놀리스 구조
"""

__version__ = "0.1.0"
__all__ = ["__version__"]
