"""
schemas/command.py
============================================================
CLI 명령 스키마

argparse 결과를 검증 가능한 형태로 옮겨 담습니다.
"""

from typing import Any, Dict

from pydantic import BaseModel, Field


class CliCommand(BaseModel):
    """
    실행할 하위 명령 하나

    Attributes:
        name (str): "group info", "separating verify" 처럼 공백으로 이은 명령 경로
        args (Dict[str, Any]): 값이 주어진 인자만 담은 딕셔너리
    """

    name: str = Field(..., description="하위 명령 경로")
    args: Dict[str, Any] = Field(default_factory=dict)
