"""
services/errors.py
============================================================
라이브러리 공통 예외

CLI는 SepboundError 계열을 잡아서 exit code 1 + JSON 에러로 변환합니다.
"판정"에 해당하는 결과(분리 실패, shelling 실패 등)는 예외가 아니라
리포트/체크 레코드로 돌려줍니다.
"""


class SepboundError(Exception):
    """모든 도메인 예외의 기반 클래스."""

    kind = "error"


class FieldError(SepboundError):
    kind = "field"


class DimensionError(SepboundError):
    kind = "dimension"


class GroupClosureError(SepboundError):
    kind = "group_closure"


class BudgetExceeded(SepboundError):
    kind = "budget"


class PreconditionError(SepboundError):
    kind = "precondition"


class CandidateError(SepboundError):
    kind = "candidate"


class SpecFileError(SepboundError):
    kind = "spec_file"


class UnknownScenario(SepboundError):
    kind = "unknown_scenario"


class UsageError(SepboundError):
    kind = "usage"
