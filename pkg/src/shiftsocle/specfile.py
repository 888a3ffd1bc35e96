"""Loading subshift presentations from TOML spec files.

A spec file declares either a finite-type subshift (alphabet plus
forbidden words) or an enumerated one (families plus standalone points),
together with optional base points and analysis bounds.  Unknown keys
are rejected.  The example specs shipped under :mod:`shiftsocle.specs`
form the regression corpus.
"""

from __future__ import annotations

import dataclasses
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

import tomli

from .families import (
    AlternatingPairFamily,
    ArithmeticFamily,
    PointFamily,
    PowerBlockFamily,
    PrependFamily,
)
from .points import PointDesc, eventually_periodic, family_member
from .sft import SftSpec
from .subshift import Bounds, Subshift

BUNDLED = ("golden", "example3x", "example54", "example55", "f-001020")


class SpecFileError(Exception):
    """The spec file failed to parse or validate."""


def _require_keys(table: dict, allowed: set, context: str) -> None:
    unknown = set(table) - allowed
    if unknown:
        raise SpecFileError(f"unknown keys {sorted(unknown)} in {context}")


def _parse_point(entry: dict, context: str) -> PointDesc:
    if "family" in entry:
        _require_keys(entry, {"family", "params"}, context)
        return family_member(entry["family"], tuple(entry.get("params", ())))
    _require_keys(entry, {"prefix", "period"}, context)
    prefix = tuple(entry.get("prefix", ""))
    period = tuple(entry["period"])
    if not period:
        raise SpecFileError(f"empty period in {context}")
    return eventually_periodic(prefix, period)


def _parse_family(entry: dict) -> PointFamily:
    kind = entry.get("type")
    fid = entry.get("id")
    if not kind or not fid:
        raise SpecFileError("family entries need 'type' and 'id'")
    if kind == "arith":
        _require_keys(entry, {"type", "id", "min_start", "step"}, f"family {fid}")
        return ArithmeticFamily(
            fid, min_start=entry.get("min_start"), step=entry.get("step", 1)
        )
    if kind == "power-block":
        _require_keys(entry, {"type", "id", "run", "sep"}, f"family {fid}")
        return PowerBlockFamily(fid, run=entry.get("run", "b"), sep=entry.get("sep", "c"))
    if kind == "alternating-pair":
        _require_keys(entry, {"type", "id", "low", "excluded"}, f"family {fid}")
        return AlternatingPairFamily(
            fid, low=entry.get("low", 1), excluded=entry.get("excluded", (2,))
        )
    if kind == "prepend":
        _require_keys(entry, {"type", "id", "letter", "base"}, f"family {fid}")
        base = _parse_point(entry["base"], f"family {fid} base")
        return PrependFamily(fid, entry["letter"], base)
    raise SpecFileError(f"unknown family type {kind!r}")


def _parse_bounds(table: dict) -> Bounds:
    mapping = {
        "word_bound": "word_bound",
        "scan_budget": "scan_budget",
        "cardinality_bound": "cardinality_bound",
        "orbit": "orbit_len",
        "depth": "depth",
        "k_bound": "k_bound",
        "n_bound": "n_bound",
        "tail_bound": "tail_bound",
        "closure_budget": "closure_budget",
    }
    _require_keys(table, set(mapping), "bounds")
    kwargs = {mapping[k]: v for k, v in table.items()}
    return Bounds(**kwargs)


def load_spec_data(data: dict, name_hint: str = "") -> Subshift:
    _require_keys(
        data,
        {"kind", "name", "alphabet", "sft", "family", "point", "base", "bounds"},
        "spec file",
    )
    kind = data.get("kind")
    if kind not in ("sft", "enumerated"):
        raise SpecFileError(f"kind must be 'sft' or 'enumerated', got {kind!r}")
    name = data.get("name", name_hint)
    bounds = _parse_bounds(data.get("bounds", {}))

    if kind == "sft":
        alphabet = data.get("alphabet", {})
        _require_keys(alphabet, {"symbols"}, "alphabet")
        symbols = alphabet.get("symbols")
        if not symbols:
            raise SpecFileError("sft specs need alphabet.symbols")
        sft_table = data.get("sft", {})
        _require_keys(sft_table, {"forbidden"}, "sft")
        forbidden = [tuple(w) for w in sft_table.get("forbidden", [])]
        for w in forbidden:
            if any(s not in symbols for s in w):
                raise SpecFileError(f"forbidden word {w} uses undeclared symbols")
        if "family" in data or "point" in data:
            raise SpecFileError("sft specs cannot declare families or points")
        return Subshift(
            "sft",
            name=name,
            sft_spec=SftSpec(symbols, forbidden),
            bounds=bounds,
        )

    alphabet = data.get("alphabet", {})
    _require_keys(alphabet, {"symbols", "integers"}, "alphabet")
    families = [_parse_family(entry) for entry in data.get("family", [])]
    points = [
        _parse_point(entry, "point entry") for entry in data.get("point", [])
    ]
    base_table = data.get("base", {})
    _require_keys(base_table, {"points"}, "base")
    base_points = [
        _parse_point(entry, "base point") for entry in base_table.get("points", [])
    ]
    try:
        return Subshift(
            "enumerated",
            name=name,
            families=families,
            standalone_points=points,
            base_points=base_points,
            bounds=bounds,
        )
    except ValueError as exc:
        raise SpecFileError(str(exc)) from exc


def load_spec_file(path) -> Subshift:
    path = Path(path)
    try:
        data = tomli.loads(path.read_text(encoding="utf-8"))
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    return load_spec_data(data, name_hint=path.stem)


def bundled_spec_path(name: str) -> Path:
    """Path of a spec shipped with the package."""
    candidate = resources.files("shiftsocle.specs") / f"{name}.toml"
    if not candidate.is_file():
        raise SpecFileError(f"no bundled spec named {name!r}")
    return Path(str(candidate))


def load_bundled(name: str) -> Subshift:
    return load_spec_file(bundled_spec_path(name))


def resolve_spec(ref: str) -> Subshift:
    """Load a spec from a path, or by bundled name."""
    p = Path(ref)
    if p.suffix == ".toml" or p.exists():
        return load_spec_file(p)
    return load_bundled(ref)
