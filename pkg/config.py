"""
config.py
============================================================
프로젝트 전역 설정

모든 값은 환경 변수(.env 권장)에서 읽고, 없으면 기본값을 사용합니다.
CLI 플래그(--threads, --budget, --extensions 등)는 호출 단위로 이 값을 덮어씁니다.
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def _int_list_env(name: str, default: str) -> tuple[int, ...]:
    raw = os.getenv(name) or default
    return tuple(int(x) for x in raw.split(",") if x.strip())


# ============================================================
# 병렬 처리
# ============================================================
# 고정공간 계산 / 노드별 homology / 점 열거 청크에 쓰이는 worker 수 상한
THREADS = max(1, _int_env("SEPBOUND_THREADS", os.cpu_count() or 1))

# ============================================================
# 계산 예산 (폭주 방지용 상한)
# ============================================================
CLOSURE_CAP = _int_env("SEPBOUND_CLOSURE_CAP", 100_000)        # 군 원소 수 상한
CHAIN_BUDGET = _int_env("SEPBOUND_CHAIN_BUDGET", 1_000_000)    # order complex chain 수 상한
POINT_BUDGET = _int_env("SEPBOUND_POINT_BUDGET", 2**24)        # 확대체별 전수 열거 점 개수 상한
SAMPLE_SIZE = _int_env("SEPBOUND_SAMPLE_SIZE", 65_536)         # 예산 초과 시 무작위 표본 크기
POINT_CHUNK = _int_env("SEPBOUND_POINT_CHUNK", 65_536)         # 점 열거 청크 크기
DEGREE_CAP = _int_env("SEPBOUND_DEGREE_CAP", 6)                # invariant_space 최대 차수
FIELD_SEARCH_LIMIT = _int_env("SEPBOUND_FIELD_SEARCH_LIMIT", 2**20)  # p^k 상한 (modulus 탐색)
SEARCH_BUDGET = _int_env("SEPBOUND_SEARCH_BUDGET", 20_000)     # search_separating 방문 노드 상한

# 분리 검증 기본 확대 차수 (F_{q^e}, e = 1, 2, 3)
DEFAULT_EXTENSIONS = _int_list_env("SEPBOUND_EXTENSIONS", "1,2,3")

# ============================================================
# 로깅 / 리포트
# ============================================================
LOG_LEVEL = os.getenv("SEPBOUND_LOG_LEVEL", "WARNING")
TOOL_VERSION = "0.1.0"
REPORT_SCHEMA_VERSION = 1
