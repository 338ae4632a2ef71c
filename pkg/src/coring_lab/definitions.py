"""Definition files: named algebras, algebra maps, bimodules, Morita data
and contexts in one JSON document.

Schema (all scalars are integers or strings like "3/7" or "2 mod 5"):

    {
      "field": {"characteristic": 2},
      "algebras": {"A": {"structure": [[[..]]], "unit": [..]}},
      "algebra_maps": {"f": {"source": "B", "target": "A", "matrix": [[..]]}},
      "bimodules": {"M": {"left": "B", "right": "A",
                          "left_action": [[[..]]], "right_action": [[[..]]]}},
      "morita": {"md": {"n": "N", "m": "M", "sigma": [[..]], "tau_tilde": [[..]]}},
      "contexts": {"c": {"n": "N", "m": "M", "sigma": [[..]], "tau": [[..]]}}
    }

Pairing matrices are given on the field tensor product of the factors
(rows of sigma are base-algebra coordinates, columns run over the pairs
in row-major order); the loader projects them onto the presented tensor
products.  Every entity is validated at load time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .algebra import Algebra, AlgebraMap, check_algebra_map
from .bimodule import Bimodule, BimoduleMap, regular_bimodule, tensor_over
from .comatrix import CoringContext, MoritaData
from .errors import CoringLabError, DefinitionError
from .fields import Field, field_of_characteristic

__all__ = ["DefinitionFile", "load", "loads", "bundled_path", "BUNDLED_NAMES"]

BUNDLED_NAMES = ["matrix2", "dual-numbers", "product-field", "morita-rows-cols",
                 "regular-module"]


def bundled_path(name: str) -> Path:
    """Path of one of the definition files shipped with the package."""
    return Path(__file__).parent / "data" / f"{name}.json"


@dataclass
class DefinitionFile:
    field: Field
    algebras: dict = dc_field(default_factory=dict)
    algebra_maps: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    morita: dict = dc_field(default_factory=dict)
    contexts: dict = dc_field(default_factory=dict)


def _parse_tensor(fld: Field, data, shape, where: str):
    try:
        arr = np.array(data, dtype=object)
    except ValueError as exc:
        raise DefinitionError(f"{where}: ragged tensor ({exc})")
    if arr.shape != shape:
        raise DefinitionError(f"{where}: expected shape {shape}, got {arr.shape}")
    flat = arr.reshape(-1)
    out = fld.zeros(arr.shape).reshape(-1)
    for i, v in enumerate(flat):
        if not isinstance(v, (int, str)):
            raise DefinitionError(f"{where}: scalar {v!r} must be an int or string")
        try:
            out[i] = fld.parse_scalar(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise DefinitionError(f"{where}: bad scalar {v!r} ({exc})")
    return fld.asarray(out.reshape(shape))


def _resolve(table: dict, name, kind: str, where: str):
    if not isinstance(name, str) or name not in table:
        raise DefinitionError(f"{where}: unresolved {kind} reference {name!r}")
    return table[name]


def loads(text: str) -> DefinitionFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DefinitionError(f"not valid JSON: {exc}")
    if not isinstance(doc, dict) or "field" not in doc:
        raise DefinitionError("document must be an object with a 'field' entry")
    char = doc["field"].get("characteristic")
    if not isinstance(char, int) or char < 0:
        raise DefinitionError("field.characteristic must be a non-negative integer")
    try:
        fld = field_of_characteristic(char)
    except ValueError as exc:
        raise DefinitionError(str(exc))
    out = DefinitionFile(fld)

    for name, spec in (doc.get("algebras") or {}).items():
        dim = len(spec.get("unit", []))
        structure = _parse_tensor(fld, spec.get("structure"), (dim, dim, dim),
                                  f"algebra {name!r}")
        unit = _parse_tensor(fld, spec.get("unit"), (dim,), f"algebra {name!r} unit")
        try:
            out.algebras[name] = Algebra(fld, structure, unit, name=name)
        except CoringLabError as exc:
            raise DefinitionError(f"algebra {name!r}: {exc}")

    for name, spec in (doc.get("algebra_maps") or {}).items():
        source = _resolve(out.algebras, spec.get("source"), "algebra",
                          f"algebra map {name!r}")
        target = _resolve(out.algebras, spec.get("target"), "algebra",
                          f"algebra map {name!r}")
        matrix = _parse_tensor(fld, spec.get("matrix"), (target.dim, source.dim),
                               f"algebra map {name!r}")
        amap = AlgebraMap(source, target, matrix)
        if not check_algebra_map(amap):
            raise DefinitionError(f"algebra map {name!r} is not a unital algebra map")
        out.algebra_maps[name] = amap

    for name, spec in (doc.get("bimodules") or {}).items():
        left = _resolve(out.algebras, spec.get("left"), "algebra", f"bimodule {name!r}")
        right = _resolve(out.algebras, spec.get("right"), "algebra", f"bimodule {name!r}")
        left_action = spec.get("left_action")
        if not isinstance(left_action, list) or not left_action:
            raise DefinitionError(f"bimodule {name!r}: missing left_action")
        dim = len(left_action[0])
        lam = _parse_tensor(fld, left_action, (left.dim, dim, dim),
                            f"bimodule {name!r} left action")
        rho = _parse_tensor(fld, spec.get("right_action"), (dim, right.dim, dim),
                            f"bimodule {name!r} right action")
        try:
            out.bimodules[name] = Bimodule(left, right, lam, rho, name=name)
        except CoringLabError as exc:
            raise DefinitionError(f"bimodule {name!r}: {exc}")

    for name, spec in (doc.get("morita") or {}).items():
        out.morita[name] = _load_morita(out, fld, name, spec)

    for name, spec in (doc.get("contexts") or {}).items():
        out.contexts[name] = _load_context(out, fld, name, spec)

    return out


def _load_morita(out: DefinitionFile, fld: Field, name: str, spec) -> MoritaData:
    n = _resolve(out.bimodules, spec.get("n"), "bimodule", f"morita {name!r}")
    m = _resolve(out.bimodules, spec.get("m"), "bimodule", f"morita {name!r}")
    ts_nm = tensor_over(n, m)
    ts_mn = tensor_over(m, n)
    a_alg, b_alg = m.right_alg, m.left_alg
    sigma_amb = _parse_tensor(fld, spec.get("sigma"), (a_alg.dim, n.dim * m.dim),
                              f"morita {name!r} sigma")
    tau_amb = _parse_tensor(fld, spec.get("tau_tilde"), (b_alg.dim, m.dim * n.dim),
                            f"morita {name!r} tau_tilde")
    try:
        sigma = BimoduleMap(ts_nm.space, regular_bimodule(a_alg),
                            fld.matmul(sigma_amb, ts_nm.section))
        tau_tilde = BimoduleMap(ts_mn.space, regular_bimodule(b_alg),
                                fld.matmul(tau_amb, ts_mn.section))
        md = MoritaData(n, m, sigma, tau_tilde, ts_nm, ts_mn)
        md.validate()
    except CoringLabError as exc:
        raise DefinitionError(f"morita {name!r}: {exc}")
    return md


def _load_context(out: DefinitionFile, fld: Field, name: str, spec) -> CoringContext:
    n = _resolve(out.bimodules, spec.get("n"), "bimodule", f"context {name!r}")
    m = _resolve(out.bimodules, spec.get("m"), "bimodule", f"context {name!r}")
    ts_nm = tensor_over(n, m)
    ts_mn = tensor_over(m, n)
    a_alg, b_alg = m.right_alg, m.left_alg
    sigma_amb = _parse_tensor(fld, spec.get("sigma"), (a_alg.dim, n.dim * m.dim),
                              f"context {name!r} sigma")
    tau_amb = _parse_tensor(fld, spec.get("tau"), (m.dim * n.dim, b_alg.dim),
                            f"context {name!r} tau")
    try:
        sigma = BimoduleMap(ts_nm.space, regular_bimodule(a_alg),
                            fld.matmul(sigma_amb, ts_nm.section))
        tau = BimoduleMap(regular_bimodule(b_alg), ts_mn.space,
                          fld.matmul(ts_mn.projection, tau_amb))
        return CoringContext(n, m, sigma, tau, ts_nm, ts_mn)
    except CoringLabError as exc:
        raise DefinitionError(f"context {name!r}: {exc}")


def load(path) -> DefinitionFile:
    """Parse and validate a definition file."""
    p = Path(path)
    if not p.exists():
        raise DefinitionError(f"no such file: {p}")
    return loads(p.read_text(encoding="utf-8"))
