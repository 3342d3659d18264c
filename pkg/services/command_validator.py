"""
services/command_validator.py
============================================================
CLI 명령 검증기 (화이트리스트 기반)

검증 항목:
1. 명령 경로가 허용 목록에 있는지
2. 필요한 인자가 모두 있는지
"""

from commands.registry import ALLOWED_COMMANDS
from schemas.command import CliCommand


def validate_command(cmd: CliCommand) -> tuple[bool, str]:
    """
    Args:
        cmd (CliCommand): 검증할 명령

    Returns:
        tuple[bool, str]: (검증 통과 여부, 이유 메시지)
    """
    if cmd.name not in ALLOWED_COMMANDS:
        return False, f"unknown command: {cmd.name}"

    for arg in ALLOWED_COMMANDS[cmd.name]["args"]:
        if cmd.args.get(arg) in (None, ""):
            return False, f"command '{cmd.name}' is missing required argument: {arg}"
    return True, "ok"
