"""
Shared 패키지

모듈 간 공통 유틸리티를 제공합니다.
"""
