"""Batch front end: validate definition files, run constructions, analyze
bimodules and emit deterministic reports.

Exit codes: 0 when the requested analysis completed (whatever the flags),
1 for input problems, 2 when a proven implication failed, which signals an
implementation bug rather than a mathematical outcome.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .comatrix import comatrix_data, context_coring, context_from_morita
from .coring import (
    Cointegral,
    FrobeniusSystem,
    left_dual_ring,
    sweedler_coring,
    verify_cointegral,
    verify_frobenius_system,
)
from .definitions import DefinitionFile, load
from .errors import CoringLabError, DefinitionError, InternalInconsistencyError
from .structure import FLAG_NAMES, analyze, bimodule_tower

_SEED_ENV = "CORING_LAB_SEED"


def _serialize_array(field, arr):
    arr = np.asarray(arr)
    if arr.ndim == 1:
        return [field.format_scalar(v) for v in arr]
    return [[field.format_scalar(v) for v in row] for row in arr]


def _parse_array(field, data):
    if data and isinstance(data[0], list):
        out = field.zeros((len(data), len(data[0])))
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                out[i, j] = field.parse_scalar(v)
    else:
        out = field.zeros(len(data))
        for i, v in enumerate(data):
            out[i] = field.parse_scalar(v)
    return field.asarray(out)


def _flag_text(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    return "inconclusive"


def report_document(deffile: DefinitionFile, name: str, seed: int) -> dict:
    module = deffile.bimodules[name]
    report = analyze(module, seed=seed)
    fld = deffile.field
    witnesses = {}
    for key, data in report.witnesses.items():
        witnesses[key] = {part: _serialize_array(fld, arr) for part, arr in data.items()}
    return {
        "tool": "coring-lab",
        "version": __version__,
        "subject": name,
        "seed": seed,
        "field": {"characteristic": fld.characteristic},
        "flags": {k: _flag_text(v) for k, v in report.flags.items()},
        "witnesses": witnesses,
        "implication_audit": [
            {"rule": e.rule, "hypotheses": e.hypotheses, "conclusion": e.conclusion,
             "kind": e.kind, "status": e.status}
            for e in report.implication_audit
        ],
    }


def render_text(doc: dict) -> str:
    lines = [f"coring-lab {doc['version']} analysis of {doc['subject']!r} "
             f"(seed {doc['seed']}, characteristic {doc['field']['characteristic']})"]
    lines.append("")
    width = max(len(n) for n in FLAG_NAMES)
    for name in FLAG_NAMES:
        lines.append(f"  {name.ljust(width)}  {doc['flags'][name]}")
    lines.append("")
    lines.append("implication audit:")
    for entry in doc["implication_audit"]:
        hyp = " & ".join(entry["hypotheses"]) or "(none)"
        arrow = "<=>" if entry["kind"] == "equivalence" else "=>"
        lines.append(f"  [{entry['status']:>20}] {hyp} {arrow} {entry['conclusion']}"
                     f"  ({entry['rule']})")
    witnesses = sorted(doc["witnesses"])
    lines.append("")
    lines.append(f"witnesses recorded: {', '.join(witnesses) if witnesses else 'none'}")
    return "\n".join(lines) + "\n"


def verify_report_witnesses(deffile: DefinitionFile, doc: dict) -> bool:
    """Re-verify the re-checkable witnesses of a serialized report."""
    module = deffile.bimodules[doc["subject"]]
    fld = deffile.field
    tower = bimodule_tower(module)
    wit = doc["witnesses"]
    ok = True
    if "comatrix_coseparable" in wit:
        gamma = _parse_array(fld, wit["comatrix_coseparable"]["cointegral"])
        ok &= verify_cointegral(Cointegral(tower.comatrix.coring, gamma, normalized=True))
    if "sweedler_coseparable" in wit:
        gamma = _parse_array(fld, wit["sweedler_coseparable"]["cointegral"])
        ok &= verify_cointegral(Cointegral(tower.sweedler, gamma, normalized=True))
    if "comatrix_frobenius" in wit:
        fs = FrobeniusSystem(tower.comatrix.coring,
                             _parse_array(fld, wit["comatrix_frobenius"]["gamma"]),
                             _parse_array(fld, wit["comatrix_frobenius"]["invariant"]))
        ok &= verify_frobenius_system(fs)
    if "sweedler_frobenius" in wit:
        fs = FrobeniusSystem(tower.sweedler,
                             _parse_array(fld, wit["sweedler_frobenius"]["gamma"]),
                             _parse_array(fld, wit["sweedler_frobenius"]["invariant"]))
        ok &= verify_frobenius_system(fs)
    if "comatrix_cosplit" in wit:
        section = _parse_array(fld, wit["comatrix_cosplit"]["section"])
        c = tower.comatrix.coring
        e = fld.matmul(section, c.base.unit)
        ok &= bool(np.array_equal(fld.matmul(c.counit_mat, e), c.base.unit))
    return bool(ok)


def _coring_document(coring, what: str, name: str, field) -> dict:
    return {
        "tool": "coring-lab",
        "version": __version__,
        "construction": what,
        "name": name,
        "field": {"characteristic": field.characteristic},
        "carrier_dim": coring.dim,
        "coproduct_representative": _serialize_array(field, coring.delta_amb),
        "counit": _serialize_array(field, coring.counit_mat),
        "validation": coring.validation,
    }


def cmd_construct(deffile: DefinitionFile, what: str, name: str) -> dict:
    fld = deffile.field
    if what == "comatrix":
        if name not in deffile.bimodules:
            raise DefinitionError(f"no bimodule named {name!r}")
        return _coring_document(comatrix_data(deffile.bimodules[name]).coring,
                                what, name, fld)
    if what == "sweedler":
        if name not in deffile.algebra_maps:
            raise DefinitionError(f"no algebra map named {name!r}")
        return _coring_document(sweedler_coring(deffile.algebra_maps[name]),
                                what, name, fld)
    if what == "context-coring":
        if name in deffile.contexts:
            ctx = deffile.contexts[name]
        elif name in deffile.morita:
            ctx = context_from_morita(deffile.morita[name])
            if ctx is None:
                raise DefinitionError(
                    f"morita data {name!r} has a non-surjective pairing")
        else:
            raise DefinitionError(f"no context or morita data named {name!r}")
        return _coring_document(context_coring(ctx), what, name, fld)
    if what == "dual-ring":
        if name not in deffile.bimodules:
            raise DefinitionError(f"no bimodule named {name!r}")
        ring = left_dual_ring(comatrix_data(deffile.bimodules[name]).coring)
        return {
            "tool": "coring-lab",
            "version": __version__,
            "construction": what,
            "name": name,
            "field": {"characteristic": fld.characteristic},
            "dim": ring.dim,
            "structure": [_serialize_array(fld, ring.structure[i])
                          for i in range(ring.dim)],
            "unit": _serialize_array(fld, ring.unit),
        }
    raise DefinitionError(f"unknown construction {what!r}")


def cmd_validate(deffile: DefinitionFile) -> dict:
    return {
        "tool": "coring-lab",
        "version": __version__,
        "field": {"characteristic": deffile.field.characteristic},
        "algebras": {n: a.dim for n, a in sorted(deffile.algebras.items())},
        "algebra_maps": sorted(deffile.algebra_maps),
        "bimodules": {n: b.dim for n, b in sorted(deffile.bimodules.items())},
        "morita": sorted(deffile.morita),
        "contexts": sorted(deffile.contexts),
        "status": "ok",
    }


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "text" and "flags" in doc:
        sys.stdout.write(render_text(doc))
    else:
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coring-lab")
    sub = parser.add_subparsers(dest="command", required=True)

    default_seed = int(os.environ.get(_SEED_ENV, "0"))

    p_analyze = sub.add_parser("analyze", help="run all deciders on one bimodule")
    p_analyze.add_argument("file")
    p_analyze.add_argument("--bimodule", required=True)
    p_analyze.add_argument("--seed", type=int, default=default_seed)
    p_analyze.add_argument("--format", choices=["text", "json"], default="text")

    p_construct = sub.add_parser("construct", help="build a coring or dual ring")
    p_construct.add_argument("file")
    p_construct.add_argument("--what", required=True,
                             choices=["comatrix", "sweedler", "context-coring",
                                      "dual-ring"])
    p_construct.add_argument("--name", required=True)

    p_validate = sub.add_parser("validate", help="load and validate a definition file")
    p_validate.add_argument("file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        deffile = load(args.file)
        if args.command == "analyze":
            if args.bimodule not in deffile.bimodules:
                raise DefinitionError(f"no bimodule named {args.bimodule!r}")
            doc = report_document(deffile, args.bimodule, args.seed)
            _emit(doc, args.format)
        elif args.command == "construct":
            _emit(cmd_construct(deffile, args.what, args.name), "json")
        else:
            _emit(cmd_validate(deffile), "json")
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except (CoringLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"elapsed: {time.monotonic() - started:.3f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
