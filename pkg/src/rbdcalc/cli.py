"""Command line interface.

Subcommands: verify-config, blowdown, sw, search, reproduce-paper. Exit
codes: 0 success, 1 mathematical failure (verification fails, precondition
violated, cap exceeded, a reproduction case fails), 2 usage error (bad
arguments, unreadable or malformed input files).

Every report carries the tool name and version plus a full echo of its
inputs, so a report file alone is enough to re-run and re-check the claim.
All JSON emitted on stdout is deterministic: keys sorted, no timestamps.
The search trailer, which includes wall time, goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__

from .blowdown import AmbientManifoldData, full_blowdown_report
from .chains import CpConfiguration, intersection_matrix, lens_space_cf, verify_cp_configuration
from .errors import RbdcalcError, SearchCapExceeded
from .families import (
    FIXTURE_CASES,
    family_h1_witness,
    expected_negative_rank,
)
from .lattice import AmbientLattice
from .search import DEFAULT_CAP, SearchTemplate, search
from .snf import det, smith_normal_form
from .sw import CharacteristicData, PeriodPoint, sw_on_blowdown

USAGE_ERROR = 2
MATH_ERROR = 1


class UsageError(Exception):
    """Bad input from the user: wrong schema, unreadable file, bad vector."""


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _certificate(input_echo: dict, payload: dict) -> dict:
    """Wrap a report so it is self-contained: tool stamp plus input echo."""
    return {
        "tool": {"name": "rbdcalc", "version": __version__},
        "input": input_echo,
        **payload,
    }


def _load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_config(path: str) -> tuple[dict, CpConfiguration]:
    """Parse a configuration file; schema errors are usage errors, Gram
    failures are mathematical ones and bubble up as RbdcalcError. Returns
    the raw payload too, for echoing into reports."""
    data = _load_json_file(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected an object with p, n, classes")
    for key in ("p", "n", "classes"):
        if key not in data:
            raise UsageError(f"{path}: missing key {key!r}")
    try:
        lat = AmbientLattice(int(data["n"]))
        classes = tuple(lat.vector(row) for row in data["classes"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, RbdcalcError):
            raise UsageError(f"{path}: {exc}") from exc
        raise UsageError(f"{path}: malformed class data: {exc}") from exc
    return data, CpConfiguration(p=int(data["p"]), classes=classes)


def _parse_vector(text: str, lattice: AmbientLattice, what: str):
    """A vector argument: inline JSON array, or @file containing one."""
    if text.startswith("@"):
        raw = _load_json_file(text[1:])
    else:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{what}: not a JSON array: {exc}") from exc
    if not isinstance(raw, list) or not all(isinstance(x, int) for x in raw):
        raise UsageError(f"{what}: expected a JSON array of integers")
    if len(raw) != lattice.rank:
        raise UsageError(
            f"{what}: expected {lattice.rank} coefficients (h first), got {len(raw)}"
        )
    return lattice.vector(raw)


# -- commands ---------------------------------------------------------------

def cmd_verify_config(args) -> int:
    data = _load_json_file(args.config)
    if not isinstance(data, dict) or any(k not in data for k in ("p", "n", "classes")):
        raise UsageError(f"{args.config}: expected an object with p, n, classes")
    try:
        lat = AmbientLattice(int(data["n"]))
        classes = [lat.vector(row) for row in data["classes"]]
        p = int(data["p"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{args.config}: malformed data: {exc}") from exc
    report = verify_cp_configuration(classes, p)
    out = report.to_json()
    if report.ok:
        gram = intersection_matrix(classes)
        out["gram"] = gram
        out["gram_det"] = det(gram)
        out["cokernel_divisors"] = list(smith_normal_form(gram).diagonal)
        out["lens_space_weights"] = lens_space_cf(p)
        out["lens_space_weights_order"] = (
            "long class first; the reversal of the class order in this report"
        )
    echo = {"command": "verify-config", "config_path": args.config, "config": data}
    _emit(_certificate(echo, out))
    return 0 if report.ok else MATH_ERROR


def cmd_blowdown(args) -> int:
    data, cfg = _load_config(args.config)
    x = AmbientManifoldData(cfg.lattice)
    delta = None
    if args.delta is not None:
        delta = _parse_vector(args.delta, cfg.lattice, "--delta")
    report = full_blowdown_report(x, cfg, delta=delta, bound=args.witness_bound)
    echo = {
        "command": "blowdown",
        "config_path": args.config,
        "config": data,
        "delta": None if delta is None else delta.to_json(),
        "witness_bound": args.witness_bound,
    }
    _emit(_certificate(echo, report.to_json()))
    return 0 if report.homeo_type is not None else MATH_ERROR


def cmd_sw(args) -> int:
    data, cfg = _load_config(args.config)
    x = AmbientManifoldData(cfg.lattice)
    k = CharacteristicData(_parse_vector(args.K, cfg.lattice, "--K"))
    h = PeriodPoint(_parse_vector(args.H, cfg.lattice, "--H"))
    outcome = sw_on_blowdown(x, cfg, k, h)
    echo = {
        "command": "sw",
        "config_path": args.config,
        "config": data,
        "K": k.k.to_json(),
        "H": h.vector.to_json(),
    }
    _emit(_certificate(echo, outcome.to_json()))
    return 0


def cmd_search(args) -> int:
    data = _load_json_file(args.template)
    try:
        template = SearchTemplate.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{args.template}: malformed template: {exc}") from exc
    started = time.perf_counter()
    results = search(template, cap=args.cap, jobs=args.jobs)
    elapsed = time.perf_counter() - started
    for cfg in results:
        print(json.dumps(cfg.to_json(), sort_keys=True, separators=(",", ":")))
    trailer = _certificate(
        {
            "command": "search",
            "template_path": args.template,
            "template": template.to_json(),
            "cap": args.cap,
            "jobs": args.jobs,
        },
        {"count": len(results), "seconds": round(elapsed, 3)},
    )
    print(json.dumps(trailer, sort_keys=True), file=sys.stderr)
    return 0


def _fixtures_root(override: str | None) -> Path:
    if override is not None:
        root = Path(override)
        if not root.is_dir():
            raise UsageError(f"fixtures directory {override} does not exist")
        return root
    return Path(str(resources.files("rbdcalc") / "fixtures"))


def _parse_only(text: str) -> dict:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"--only expects k=v pairs, got {part!r}")
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in ("a", "family"):
            raise UsageError(f"--only keys are a and family, got {key!r}")
        try:
            out[key] = int(val)
        except ValueError as exc:
            raise UsageError(f"--only {key} must be an integer, got {val!r}") from exc
    return out


def _reproduce_case(case, fixtures_root: Path) -> dict:
    """Run the whole pipeline for one fixture; record per-stage outcomes."""
    stages: dict[str, dict] = {}
    path = fixtures_root / f"family{case.family}" / f"a{case.a}.json"
    echo = {
        "command": "reproduce-paper",
        "case": case.name,
        "family": case.family,
        "a": case.a,
        "fixture_path": str(path),
        "fixture": None,
    }
    result = _certificate(echo, {"case": case.name, "stages": stages, "pass": False})

    def fail(stage: str, exc: Exception) -> dict:
        stages[stage] = {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}
        return result

    try:
        data = _load_json_file(str(path))
        echo["fixture"] = data
        lat = AmbientLattice(int(data["n"]))
        stages["load"] = {"status": "pass", "file": str(path)}
    except (UsageError, KeyError, TypeError, ValueError) as exc:
        return fail("load", exc)

    try:
        classes = tuple(lat.vector(row) for row in data["classes"])
        cfg = CpConfiguration(p=int(data["p"]), classes=classes)
        stages["verify"] = {
            "status": "pass",
            "report": verify_cp_configuration(classes, cfg.p).to_json(),
        }
    except RbdcalcError as exc:
        return fail("verify", exc)

    x = AmbientManifoldData(lat)
    try:
        delta = family_h1_witness(case.a, case.family)
        report = full_blowdown_report(x, cfg, delta=delta, handle_data=None)
        expected = f"CP^2 # {expected_negative_rank(case.a, case.family)} CPbar^2"
        stages["blowdown"] = {
            "status": "pass" if report.homeo_type == expected else "fail",
            "expected_type": expected,
            "report": report.to_json(),
        }
        if report.homeo_type != expected:
            return result
    except RbdcalcError as exc:
        return fail("blowdown", exc)

    handles = data.get("handles")
    if handles is None:
        stages["handles"] = {"status": "skipped", "reason": "no handle data recorded"}
    else:
        try:
            if "counts" in handles:
                counts = [int(v) for v in handles["counts"]]
            else:
                from .blowdown import handle_counts_after_blowdown

                counts = list(
                    handle_counts_after_blowdown(int(handles["h2"]), int(handles["h3"]))
                )
            stages["handles"] = {"status": "pass", "counts": counts}
        except (RbdcalcError, KeyError, TypeError, ValueError) as exc:
            return fail("handles", exc)

    try:
        k = CharacteristicData(lat.vector(data["K"]))
        h = PeriodPoint(lat.vector(data["H"]))
        outcome = sw_on_blowdown(x, cfg, k, h)
        ok = outcome.value in (1, -1) and outcome.d == 0
        stages["sw"] = {
            "status": "pass" if ok else "fail",
            "outcome": outcome.to_json(),
        }
        if not ok:
            return result
        negated = sw_on_blowdown(x, cfg, CharacteristicData(-k.k), h)
        ok_neg = negated.value == -outcome.value
        stages["sw_negated"] = {
            "status": "pass" if ok_neg else "fail",
            "value": negated.value,
        }
        if not ok_neg:
            return result
    except RbdcalcError as exc:
        return fail("sw", exc)

    result["pass"] = all(
        s.get("status") in ("pass", "skipped") for s in stages.values()
    )
    return result


def cmd_reproduce_paper(args) -> int:
    filters = _parse_only(args.only) if args.only else {}
    cases = [
        c
        for c in FIXTURE_CASES
        if ("a" not in filters or c.a == filters["a"])
        and ("family" not in filters or c.family == filters["family"])
    ]
    if not cases:
        raise UsageError(f"--only {args.only!r} selects no cases")
    root = _fixtures_root(args.fixtures)
    results = [_reproduce_case(c, root) for c in cases]
    summary = _certificate(
        {
            "command": "reproduce-paper",
            "only": args.only,
            "out": args.out,
            "fixtures": args.fixtures,
        },
        {
            "cases": results,
            "selected": len(results),
            "passed": sum(1 for r in results if r["pass"]),
            "all_passed": all(r["pass"] for r in results),
        },
    )
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for r in results:
            name = r["case"].replace("/", "_") + ".json"
            (out_dir / name).write_text(
                json.dumps(r, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
        (out_dir / "summary.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    _emit(summary)
    return 0 if summary["all_passed"] else MATH_ERROR


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbdcalc",
        description="Exact chain-configuration and blowdown-invariant calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify-config", help="check a configuration file")
    p_verify.add_argument("config", help="JSON file with p, n, classes")
    p_verify.set_defaults(func=cmd_verify_config)

    p_blow = sub.add_parser("blowdown", help="invariants and certificates of a blowdown")
    p_blow.add_argument("config", help="JSON file with p, n, classes")
    p_blow.add_argument(
        "--delta",
        help="H1 witness: JSON integer array (h first) or @file",
    )
    p_blow.add_argument(
        "--witness-bound",
        type=int,
        default=3,
        help="coefficient bound for the witness search (default 3)",
    )
    p_blow.set_defaults(func=cmd_blowdown)

    p_sw = sub.add_parser("sw", help="blowdown invariant via wall crossing")
    p_sw.add_argument("--config", required=True, help="JSON file with p, n, classes")
    p_sw.add_argument("--K", required=True, help="characteristic lift: JSON array or @file")
    p_sw.add_argument("--H", required=True, help="period point: JSON array or @file")
    p_sw.set_defaults(func=cmd_sw)

    p_search = sub.add_parser("search", help="enumerate configurations in a box")
    p_search.add_argument("--template", required=True, help="JSON template file")
    p_search.add_argument("--cap", type=int, default=DEFAULT_CAP, help="box cap")
    p_search.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_search.set_defaults(func=cmd_search)

    p_rep = sub.add_parser("reproduce-paper", help="run the bundled family cases")
    p_rep.add_argument("--only", help="filter, e.g. a=5,family=2")
    p_rep.add_argument("--out", help="directory for per-case JSON reports")
    p_rep.add_argument("--fixtures", help="override the bundled fixture directory")
    p_rep.set_defaults(func=cmd_reproduce_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rbdcalc: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SearchCapExceeded as exc:
        print(f"rbdcalc: {exc}", file=sys.stderr)
        return MATH_ERROR
    except RbdcalcError as exc:
        print(f"rbdcalc: {exc}", file=sys.stderr)
        return MATH_ERROR


if __name__ == "__main__":
    sys.exit(main())
