"""
sepbound_cli.py
============================================================
명령행 진입점

하위 명령:
1. group info | group classify        : 군 요약 / reflection 분류
2. poset build [--dot FILE] [--dump]  : 분리 poset (+ Hasse DOT)
3. homology [--char C] [--entries]    : 비소멸 차수 Q
4. bounds                             : 하한과 일관성 검사
5. shelling [--verify-only]           : shelling 구성 + 검증
6. separating verify|search|triangle  : 분리 집합 검증 / 탐색 / 사용자 삼각형
7. gallery NAME [SECTION]             : 예제 시나리오 + 기대값 비교
8. report --json FILE                 : 전체 리포트 파일

군은 --group FILE (JSON) 또는 --gallery NAME 으로 지정합니다.
stdout 은 JSON 만, 로그는 stderr 로 나갑니다.

exit code:
- 0 : 성공 / 검증 통과
- 2 : 부정적 판정 (분리 실패, 기대값 불일치, shelling 검증 실패)
- 1 : 사용법 / 계산 오류
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from pydantic import BaseModel, ValidationError

from chains.report_chain import (
    ChainOptions,
    check_expectations,
    classification_record,
    group_record,
    run_chain,
    separation_record,
)
from config import LOG_LEVEL, POINT_BUDGET, SEARCH_BUDGET, THREADS
from schemas.command import CliCommand
from schemas.reports import ErrorReport, SearchRecord, TriangleRecord
from services.arrangement import poset_dot
from services.command_validator import validate_command
from services.errors import PreconditionError, SepboundError, UsageError
from services.gallery import GALLERY, Expectation, Scenario, gallery
from services.invariants import invariant_space
from services.reflection import classify
from services.separation import search_separating, space_pool, verify_separating, verify_triangle
from services.spec_loader import load_candidates, load_group, load_triangle

logger = logging.getLogger("sepbound")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

SECTIONS = ["full", "summary", "group", "classification", "poset", "homology", "bounds", "shelling", "profile", "separating"]

# 섹션 → 마지막으로 실행할 파이프라인 단계
_STOP_AFTER = {
    "group": "group",
    "classification": "classify",
    "poset": "poset",
    "homology": "homology",
    "bounds": "bounds",
    "shelling": "shelling",
    "profile": "profile",
}


class _Parser(argparse.ArgumentParser):
    """argparse 오류를 SystemExit(2) 대신 UsageError 로 올립니다 (exit 2 는 판정 전용)."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ============================================================
# 인자 정의
# ============================================================
def _extensions(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("extension degrees must be positive")
    return out


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v: INFO, -vv: DEBUG")
    common.add_argument("--group", help="GroupSpecFile JSON")
    common.add_argument("--gallery", dest="gallery_name", metavar="NAME", help="gallery scenario as the group")
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--deep", action="store_true", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=POINT_BUDGET, help="points enumerated per extension")
    common.add_argument("--char", type=int, default=None, help="homology coefficient characteristic")
    common.add_argument("--extensions", type=_extensions, default=None, help="e.g. 1,2,3")
    common.add_argument("--threads", type=int, default=THREADS)
    common.add_argument("--on-budget", choices=["sample", "skip", "error"], default="sample")
    common.add_argument("--witness", action="store_true", help="include failing point pairs in reports")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sepbound", description="separating-set lower bounds for finite matrix groups")
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group").add_subparsers(dest="action", required=True)
    group.add_parser("info", parents=[common])
    group.add_parser("classify", parents=[common])

    poset = sub.add_parser("poset").add_subparsers(dest="action", required=True)
    build = poset.add_parser("build", parents=[common])
    build.add_argument("--dot", metavar="FILE", help="write the Hasse diagram as Graphviz DOT")
    build.add_argument("--dump", action="store_true", help="include nodes and covers in the JSON")

    homology = sub.add_parser("homology", parents=[common])
    homology.add_argument("--entries", action="store_true", help="include per-node Betti numbers")

    sub.add_parser("bounds", parents=[common])

    shelling = sub.add_parser("shelling", parents=[common])
    shelling.add_argument("--verify-only", action="store_true", help="report the verdict without the facet order")

    sep = sub.add_parser("separating").add_subparsers(dest="action", required=True)
    verify = sep.add_parser("verify", parents=[common])
    verify.add_argument("--candidates", metavar="FILE", help="CandidateFile JSON (default: gallery candidates)")
    search = sep.add_parser("search", parents=[common])
    search.add_argument("--target", type=int)
    search.add_argument("--pool", choices=["gallery", "invariants"], default="gallery")
    search.add_argument("--max-degree", type=int, default=3, help="invariant pool degrees 2..D")
    search.add_argument("--search-budget", type=int, default=SEARCH_BUDGET)
    triangle = sep.add_parser("triangle", parents=[common])
    triangle.add_argument("--triangle", metavar="FILE", help="TriangleFile JSON")

    gal = sub.add_parser("gallery", parents=[common])
    gal.add_argument("name", choices=sorted(GALLERY))
    gal.add_argument("section", nargs="?", choices=SECTIONS, default="full")

    report = sub.add_parser("report", parents=[common])
    report.add_argument("--json", dest="json_path", metavar="FILE")
    return parser


def _command(args: argparse.Namespace) -> CliCommand:
    name = args.command if getattr(args, "action", None) is None else f"{args.command} {args.action}"
    values = {
        "group": args.group or args.gallery_name,
        "candidates": getattr(args, "candidates", None) or (args.gallery_name and "gallery"),
        "target": getattr(args, "target", None),
        "triangle": getattr(args, "triangle", None),
        "name": getattr(args, "name", None),
        "json": getattr(args, "json_path", None),
    }
    return CliCommand(name=name, args={k: v for k, v in values.items() if v is not None})


# ============================================================
# 공통 처리
# ============================================================
def setup_logging(verbose: int) -> None:
    level = {0: LOG_LEVEL, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="[%(levelname)s] %(name)s: %(message)s",
        force=True,
    )


@dataclass
class Resolved:
    scenario: Scenario
    expectations: list[Expectation]


def resolve(args: argparse.Namespace, name: str | None = None) -> Resolved:
    """--group FILE 또는 --gallery NAME (또는 gallery 명령의 NAME) 을 시나리오로."""
    name = name or args.gallery_name
    if args.group and name:
        raise UsageError("give either --group or --gallery, not both")
    if args.group:
        g = load_group(args.group)
        return Resolved(Scenario(g.label or Path(args.group).stem, {}, g), [])
    _, scenario, expectations = gallery(name, n=args.n, p=args.p, d=args.d, deep=args.deep)
    return Resolved(scenario, expectations)


def chain_options(args: argparse.Namespace, **overrides: Any) -> ChainOptions:
    opts = ChainOptions(
        characteristic=args.char,
        extensions=args.extensions,
        budget=args.budget,
        on_budget=args.on_budget,
        seed=args.seed,
        threads=args.threads,
        witness=args.witness,
    )
    for k, v in overrides.items():
        setattr(opts, k, v)
    return opts


def emit(payload: BaseModel | dict) -> None:
    if isinstance(payload, BaseModel):
        print(payload.model_dump_json(indent=2))
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False))


# ============================================================
# 하위 명령 handler (각각 exit code 반환)
# ============================================================
def cmd_group(args: argparse.Namespace) -> int:
    scn = resolve(args).scenario
    if args.action == "info":
        emit(group_record(scn.group))
    else:
        emit(classification_record(classify(scn.group)))
    return EXIT_OK


def cmd_poset(args: argparse.Namespace) -> int:
    scn = resolve(args).scenario
    state = run_chain(scn, chain_options(args, stop_after="poset", dump_poset=args.dump))
    if args.dot:
        Path(args.dot).write_text(poset_dot(state.poset), encoding="utf-8")
        logger.info("wrote %s", args.dot)
    emit(state.report.poset)
    return EXIT_OK


def cmd_homology(args: argparse.Namespace) -> int:
    scn = resolve(args).scenario
    state = run_chain(scn, chain_options(args, stop_after="homology", homology_entries=args.entries))
    emit(state.report.homology)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    state = run_chain(resolve(args).scenario, chain_options(args, stop_after="bounds"))
    emit(state.report.bounds)
    return EXIT_OK


def cmd_shelling(args: argparse.Namespace) -> int:
    opts = chain_options(args, stop_after="shelling", shelling_order=not args.verify_only)
    report = run_chain(resolve(args).scenario, opts).report.shelling
    if report.status == "not-applicable":
        raise PreconditionError(report.reason)
    emit(report)
    return EXIT_OK if report.status == "verified" else EXIT_NEGATIVE


def _verify(args: argparse.Namespace) -> int:
    scn = resolve(args).scenario
    if args.candidates:
        cands = load_candidates(args.candidates, scn.group)
    elif scn.candidates:
        cands = scn.candidates
    else:
        raise UsageError(f"scenario {scn.name} has no candidate set; pass --candidates FILE")
    rep = verify_separating(
        scn.group,
        cands,
        args.extensions or scn.extensions,
        args.budget,
        on_budget=args.on_budget,
        seed=args.seed,
        threads=args.threads,
    )
    emit(separation_record(rep, witness=True))
    return EXIT_NEGATIVE if rep.verdict == "not-separating" else EXIT_OK


def _linear_base(scn: Scenario) -> list[tuple[str, Any]]:
    out = []
    for k, f in enumerate(invariant_space(scn.group, 1)):
        terms = list(f.terms)
        name = f"x{terms[0].index(1) + 1}" if len(terms) == 1 else f"I1[{k}]"
        out.append((name, f))
    return out


def _search(args: argparse.Namespace) -> int:
    scn = resolve(args).scenario
    if args.pool == "gallery":
        if not scn.pool:
            raise UsageError(f"scenario {scn.name} has no search pool; use --pool invariants")
        pool = scn.pool
    else:
        pool = space_pool({D: invariant_space(scn.group, D) for D in range(2, args.max_degree + 1)})
    res = search_separating(
        scn.group,
        _linear_base(scn),
        pool,
        args.target,
        extensions=args.extensions or (1, 2),
        budget=args.budget,
        search_budget=args.search_budget,
        threads=args.threads,
    )
    emit(
        SearchRecord(
            target_size=args.target,
            found=[n for n, _ in res.found] if res.found else None,
            nodes=res.nodes,
            leaves=res.leaves,
            separation=separation_record(res.report) if res.report else None,
        )
    )
    return EXIT_NEGATIVE if res.exhausted else EXIT_OK


def _triangle(args: argparse.Namespace) -> int:
    scn = resolve(args).scenario
    family, extra = load_triangle(args.triangle, scn.group)
    res = verify_triangle(
        scn.group,
        family,
        extra,
        args.extensions or scn.extensions,
        args.budget,
        on_budget=args.on_budget,
        seed=args.seed,
        threads=args.threads,
    )
    emit(
        TriangleRecord(
            size=res.size, diagonal_sums=res.sums, expected=res.expected, separation=separation_record(res.report)
        )
    )
    return EXIT_NEGATIVE if res.report.verdict == "not-separating" else EXIT_OK


def cmd_separating(args: argparse.Namespace) -> int:
    return {"verify": _verify, "search": _search, "triangle": _triangle}[args.action](args)


def _negative(report) -> bool:
    failed = any(not e.ok for e in report.expectations)
    if report.separating is not None and report.separating.verdict == "not-separating":
        failed = True
    if report.shelling is not None and report.shelling.status == "failed":
        failed = True
    return failed


def cmd_gallery(args: argparse.Namespace) -> int:
    res = resolve(args, args.name)
    stop = _STOP_AFTER.get(args.section)
    state = run_chain(res.scenario, chain_options(args, stop_after=stop))
    summary = state.report.summary
    # 일부 단계만 돌렸으면 계산된 키의 기대값만 비교
    expectations = res.expectations if stop is None else [e for e in res.expectations if e.key in summary]
    state.report.expectations = check_expectations(summary, expectations)
    report = state.report
    if args.section == "full":
        emit(report)
    elif args.section == "summary":
        emit({"scenario": report.scenario, "summary": summary,
              "expectations": [e.model_dump() for e in report.expectations]})
    elif args.section == "classification":
        emit(report.classification)
    else:
        section = getattr(report, args.section)
        emit(section if section is not None else {"scenario": report.scenario, args.section: None})
    return EXIT_NEGATIVE if _negative(report) else EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    res = resolve(args)
    state = run_chain(res.scenario, chain_options(args, dump_poset=True, homology_entries=True), res.expectations)
    report = state.report
    Path(args.json_path).write_text(report.model_dump_json(indent=2), encoding="utf-8")
    logger.info("wrote %s", args.json_path)
    emit({"scenario": report.scenario, "json": args.json_path, "summary": report.summary})
    return EXIT_NEGATIVE if _negative(report) else EXIT_OK


HANDLERS: dict[str, Callable[[argparse.Namespace], int]] = {
    "group": cmd_group,
    "poset": cmd_poset,
    "homology": cmd_homology,
    "bounds": cmd_bounds,
    "shelling": cmd_shelling,
    "separating": cmd_separating,
    "gallery": cmd_gallery,
    "report": cmd_report,
}


# ============================================================
# 진입점
# ============================================================
def run(argv: Sequence[str] | None = None) -> int:
    """
    Args:
        argv (Sequence[str] | None): sys.argv[1:] 대신 쓸 인자

    Returns:
        int: exit code (0 / 1 / 2)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        setup_logging(args.verbose)
        cmd = _command(args)
        ok, reason = validate_command(cmd)
        if not ok:
            raise UsageError(reason)
        logger.debug("running %s with %s", cmd.name, cmd.args)
        return HANDLERS[args.command](args)
    except SepboundError as e:
        emit(ErrorReport(error=e.kind, detail=str(e)))
    except ValidationError as e:
        emit(ErrorReport(error="validation", detail=str(e)))
    except OSError as e:
        emit(ErrorReport(error="io", detail=str(e)))
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
