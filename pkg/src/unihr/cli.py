"""Administrative command line: serve, import, reviews, exports.

All date input and output is ISO 8601; structured output is UTF-8.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from datetime import date
from pathlib import Path

from . import workflow
from .api import serve
from .config import ServiceConfig, load_config
from .errors import HRError
from .service import HRService


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unihr", description="HR service for higher-education institutions"
    )
    parser.add_argument("--config", metavar="FILE", help="declarative config file (YAML)")
    parser.add_argument("--store", metavar="PATH", help="override the store location")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    p = sub.add_parser("import-employees", help="bulk-load persons and employments from CSV")
    p.add_argument("file", help="CSV file with person and employment columns")

    p = sub.add_parser("expiry-review", help="print the grade-expiry warning review")
    p.add_argument("--as-of", required=True, metavar="DATE", help="review date (ISO)")

    p = sub.add_parser("backlog", help="print the requirements backlog grouped by MoSCoW class")
    p.add_argument("--export", action="store_true", help="emit delimited records instead")
    p.add_argument("--import", dest="import_file", metavar="FILE",
                   help="load requirements from delimited records")

    p = sub.add_parser("export-procedure", help="dump a procedure's event history as JSONL")
    p.add_argument("procedure_id")
    p.add_argument(
        "--attachments",
        action="store_true",
        help="dump the attachment manifest instead of the event log",
    )

    p = sub.add_parser("replay", help="replay an exported event log and print the final state")
    p.add_argument("file", help="JSONL event log (as written by export-procedure)")

    sub.add_parser("seed-demo", help="populate the store with a small demo data set")

    return parser


def _config_from_args(args: argparse.Namespace) -> ServiceConfig:
    config = load_config(args.config)
    if args.store:
        config = replace(config, store_path=args.store)
    if args.command == "serve":
        if args.host:
            config = replace(config, host=args.host)
        if args.port:
            config = replace(config, port=args.port)
    return config.validated()


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)

        if args.command == "serve":
            serve(config)
            return 0

        if args.command == "replay":
            # Pure verification; needs no store.
            text = Path(args.file).read_text(encoding="utf-8")
            events = workflow.events_from_jsonl(text)
            state = workflow.replay(events, config.workflow_rules())
            print(state.value)
            return 0

        service = HRService(config)

        if args.command == "import-employees":
            report = service.import_employees(args.file)
            print(
                json.dumps(
                    {
                        "created": report.created,
                        "skipped": report.skipped,
                        "errors": report.errors,
                    },
                    ensure_ascii=False,
                )
            )
            return 0

        if args.command == "expiry-review":
            try:
                as_of = date.fromisoformat(args.as_of)
            except ValueError:
                print(f"unihr: --as-of must be an ISO date: {args.as_of!r}", file=sys.stderr)
                return 2
            sys.stdout.write(service.review_csv(as_of))
            return 0

        if args.command == "backlog":
            if args.import_file:
                report = service.import_requirements(args.import_file)
                print(json.dumps({"created": report.created, "errors": report.errors},
                                 ensure_ascii=False))
                return 0
            if args.export:
                sys.stdout.write(service.requirements_csv())
                return 0
            for priority, items in service.backlog_groups().items():
                print(f"[{priority.value}]")
                for requirement in items:
                    print(f"  {requirement.requirement_id}  {requirement.category.value:<15} "
                          f"{requirement.text}")
            return 0

        if args.command == "export-procedure":
            if args.attachments:
                sys.stdout.write(service.attachment_manifest_csv(args.procedure_id))
                return 0
            procedure = service.store.get_procedure(args.procedure_id)
            if procedure is None:
                print(f"unihr: no such procedure: {args.procedure_id}", file=sys.stderr)
                return 1
            sys.stdout.write(workflow.history_to_jsonl(procedure.history))
            return 0

        if args.command == "seed-demo":
            refs = service.seed_demo()
            print(json.dumps(refs, ensure_ascii=False, indent=2))
            return 0

        raise AssertionError(f"unhandled command: {args.command}")
    except HRError as exc:
        print(f"unihr: {exc.code}: {exc.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
