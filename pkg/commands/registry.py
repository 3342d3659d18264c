"""
commands/registry.py
============================================================
CLI 하위 명령 화이트리스트

새 하위 명령 추가 방법:
1. 이 딕셔너리에 명령 경로와 필수 인자 목록 추가
2. sepbound_cli.py 에 parser 와 handler 등록
3. services/command_validator.py 가 자동으로 검증
"""

# ============================================================
# 허용된 하위 명령
# ============================================================
# 구조:
#   "명령 경로": {"args": ["필수인자", ...]}
#
# Note:
#   - "group" 은 --group FILE 또는 --gallery NAME 중 하나로 채워짐
#   - optional 인자(--dot, --char 등)는 적지 않음

ALLOWED_COMMANDS = {
    "group info": {"args": ["group"]},
    "group classify": {"args": ["group"]},
    "poset build": {"args": ["group"]},
    "homology": {"args": ["group"]},
    "bounds": {"args": ["group"]},
    "shelling": {"args": ["group"]},
    # 후보 파일 또는 갤러리 후보
    "separating verify": {"args": ["group", "candidates"]},
    "separating search": {"args": ["group", "target"]},
    "separating triangle": {"args": ["group", "triangle"]},
    "gallery": {"args": ["name"]},
    "report": {"args": ["group", "json"]},
}
