"""Command-line front end: session scripts, fixture corpus, check registry
documentation, and the sharpness explorer."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .kernel import KernelError
from .session import ScriptError, run_script
from .checks import PROVEN, SoundnessError, registry_table
from . import corpus as corpus_mod
from . import explore as explore_mod

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def _report_failures(outputs):
    bad = []
    for out in outputs:
        rep = out.get("report")
        if rep and rep["verdict"] == "fails":
            bad.append(rep)
    return bad


def _cmd_run(args):
    target = args.target
    if target == "corpus":
        result = corpus_mod.run_corpus(field_char=args.field_char, bound=args.bound,
                                       seed=args.seed, threads=args.threads)
        for res in result["fixtures"]:
            n = len(res["reports"])
            status = "ok" if res["ok"] else "FAIL"
            print(f"{res['id']:<16} {status}  ({n} checks, "
                  f"{len(res['expects'])} frozen values)")
        for mm in result["expect_mismatches"]:
            print(f"mismatch: fixture {mm['fixture']} path {mm['path']}: "
                  f"expected {mm['expected']!r} ({mm['provenance']}), got {mm['got']!r}",
                  file=sys.stderr)
        for sf in result["soundness_failures"]:
            print(f"soundness: fixture {sf['fixture']} check {sf['check']}: "
                  f"expected {sf['expected']}, got {sf['got']} "
                  f"(lhs={sf['lhs']!r}, rhs={sf['rhs']!r}) "
                  "-- proven check failed, investigate",
                  file=sys.stderr)
        if args.json:
            _write_json(args.json, {
                "reports": result["reports"],
                "expect_mismatches": result["expect_mismatches"],
                "soundness_failures": result["soundness_failures"],
                "ok": result["ok"],
            })
        return EXIT_OK if result["ok"] else EXIT_CHECK_FAILURE

    path = Path(target)
    if path.is_file():
        outputs = run_script(path.read_text(encoding="utf-8"),
                             field_char=args.field_char, bound=args.bound,
                             seed=args.seed)
        payload = {"outputs": outputs}
        if args.json:
            _write_json(args.json, payload)
        else:
            json.dump(payload, sys.stdout, indent=2, ensure_ascii=False)
            print()
        return EXIT_CHECK_FAILURE if _report_failures(outputs) else EXIT_OK

    if target in corpus_mod.list_fixture_ids():
        fx = corpus_mod.load_fixture(target)
        res = corpus_mod.run_fixture(fx, field_char=args.field_char,
                                     bound=args.bound, seed=args.seed)
        payload = {"id": res["id"], "outputs": res["outputs"],
                   "expects": res["expects"], "ok": res["ok"]}
        if args.json:
            _write_json(args.json, payload)
        else:
            json.dump(payload, sys.stdout, indent=2, ensure_ascii=False)
            print()
        failed = not res["ok"] or _report_failures(res["outputs"])
        return EXIT_CHECK_FAILURE if failed else EXIT_OK

    print(f"error: {target!r} is neither a file, a fixture id, nor 'corpus'",
          file=sys.stderr)
    return EXIT_INPUT_ERROR


def _cmd_list_checks(args):
    rows = registry_table()
    if args.json:
        json.dump(rows, sys.stdout, indent=2, ensure_ascii=False)
        print()
        return EXIT_OK
    wid = max(len(r["id"]) for r in rows)
    wk = max(len(r["kind"]) for r in rows)
    for r in rows:
        tag = "proven" if r["proven"] else "report"
        print(f"{r['id']:<{wid}}  {r['kind']:<{wk}}  {tag:<6}  {r['statement']}")
    return EXIT_OK


def _cmd_explore(args):
    rows = explore_mod.explore(args.check_id, args.trials, args.seed)
    text = explore_mod.to_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="tensorcoh",
        description="exact graded commutative algebra with a registry of "
                    "homological bound, vanishing and freeness checks")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_run = sub.add_parser("run", help="run a session script, a fixture, or the corpus")
    p_run.add_argument("target", help="script file, fixture id, or 'corpus'")
    p_run.add_argument("--json", metavar="OUT", help="write the JSON report here")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--field-char", type=int, default=None)
    p_run.add_argument("--bound", type=int, default=None)
    p_run.add_argument("--threads", type=int, default=None)
    p_run.set_defaults(fn=_cmd_run)

    p_list = sub.add_parser("list-checks", help="print the check registry table")
    p_list.add_argument("--json", action="store_true")
    p_list.set_defaults(fn=_cmd_list_checks)

    p_exp = sub.add_parser("explore", help="sample random instances of a bound check")
    p_exp.add_argument("check_id")
    p_exp.add_argument("--trials", type=int, default=50)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--csv", metavar="OUT")
    p_exp.set_defaults(fn=_cmd_explore)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SoundnessError as exc:
        print(f"soundness failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    except (ScriptError, KernelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
