"""
tests/test_command_validator.py
============================================================
CLI 명령 화이트리스트 검증기
"""

import pytest

from commands.registry import ALLOWED_COMMANDS
from schemas.command import CliCommand
from services.command_validator import validate_command


@pytest.mark.parametrize("name", sorted(ALLOWED_COMMANDS))
def test_every_registered_command_passes_with_its_arguments(name):
    args = {a: "x" for a in ALLOWED_COMMANDS[name]["args"]}
    assert validate_command(CliCommand(name=name, args=args)) == (True, "ok")


def test_unknown_command():
    ok, reason = validate_command(CliCommand(name="poset destroy"))
    assert not ok
    assert "unknown command" in reason


@pytest.mark.parametrize("value", [None, ""])
def test_missing_argument(value):
    ok, reason = validate_command(CliCommand(name="separating verify", args={"group": "g.json", "candidates": value}))
    assert not ok
    assert reason.endswith("candidates")
