"""Fixture corpus: frozen session scripts with expected outputs and
certificates, executed deterministically with a soundness gate."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .kernel import UnsupportedInput
from .session import run_script
from .checks import PROVEN

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def list_fixture_ids():
    return sorted(p.stem for p in FIXTURES_DIR.glob("*.json"))


def load_fixture(fixture_id: str) -> dict:
    path = FIXTURES_DIR / f"{fixture_id}.json"
    if not path.is_file():
        raise UnsupportedInput(f"unknown fixture {fixture_id!r}")
    with open(path, encoding="utf-8") as fh:
        fx = json.load(fh)
    if fx.get("id") != fixture_id:
        raise UnsupportedInput(f"fixture file {path.name} declares id {fx.get('id')!r}")
    return fx


def _resolve_path(outputs, path: str):
    node = outputs
    for part in path.split("/"):
        if isinstance(node, list):
            node = node[int(part)]
        elif isinstance(node, dict):
            node = node[part]
        else:
            raise KeyError(path)
    return node


def run_fixture(fx: dict, field_char=None, bound=None, seed=None) -> dict:
    outputs = run_script("\n".join(fx.get("script", [])),
                         field_char=field_char, bound=bound, seed=seed,
                         certificates=fx.get("certificates"))
    expects = []
    for exp in fx.get("expect", []):
        try:
            got = _resolve_path(outputs, exp["path"])
            resolved = True
        except (KeyError, IndexError, ValueError):
            got = None
            resolved = False
        ok = resolved and got == exp["value"]
        expects.append({"path": exp["path"], "expected": exp["value"],
                        "got": got, "ok": ok,
                        "provenance": exp.get("provenance", "derived-frozen")})
    reports = []
    for out in outputs:
        if out["op"] == "check":
            reports.append(out["report"])
        elif out["op"] == "depthseq":
            reports.append(out["report"])
    return {
        "id": fx["id"],
        "anchors": fx.get("anchors", []),
        "outputs": outputs,
        "expects": expects,
        "reports": reports,
        "ok": all(e["ok"] for e in expects),
    }


def run_corpus(fixture_ids=None, field_char=None, bound=None, seed=None, threads=None):
    """Run fixtures in id order; collect reports and soundness diagnostics."""
    ids = sorted(fixture_ids) if fixture_ids else list_fixture_ids()
    fixtures = [load_fixture(fid) for fid in ids]

    def _one(fx):
        return run_fixture(fx, field_char=field_char, bound=bound, seed=seed)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_one, fixtures))
    else:
        results = [_one(fx) for fx in fixtures]

    rows = []
    soundness = []
    for res in results:
        for rep in res["reports"]:
            rows.append({
                "fixture": res["id"],
                "check": rep["check"],
                "hypotheses": rep["hypotheses"],
                "lhs": rep["lhs"],
                "rhs": rep["rhs"],
                "verdict": rep["verdict"],
                "millis": rep["millis"],
            })
            if rep["check"] in PROVEN and rep["verdict"] == "fails":
                soundness.append({
                    "fixture": res["id"],
                    "check": rep["check"],
                    "expected": "holds",
                    "got": rep["verdict"],
                    "lhs": rep["lhs"],
                    "rhs": rep["rhs"],
                })
    mismatches = [
        {"fixture": res["id"], **e}
        for res in results for e in res["expects"] if not e["ok"]
    ]
    return {
        "fixtures": results,
        "reports": rows,
        "soundness_failures": soundness,
        "expect_mismatches": mismatches,
        "ok": not soundness and not mismatches,
    }
