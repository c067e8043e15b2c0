"""TOML structure files: rings, Adams/lambda tables, models, and towers.

The on-disk format is TOML (key/value with nested tables).  Polynomial
payloads are strings under the expression grammar of :mod:`.parsing`.
See the repository README for the full schema.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Dict, List, Optional

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .coefficients import INTEGERS, KO_EVEN, CoefficientRing, IntegersMod, PrimeField
from .errors import InputError, ParseError
from .genus import KModelStructure, KOModelStructure
from .graded import GradedPresentation
from .newton import AdamsFamily, LambdaFamily
from .parsing import format_series, parse_series
from .series import FilteredMap, Generator, Relation, RingPresentation
from .towers import (
    FiniteGroupTower,
    Homomorphism,
    cyclic_group,
    group_from_table,
    symmetric_group,
    zero_homomorphism,
)

_RELATION_PARSE_TRUNCATION = 1 << 30


def parse_coefficient_ring(text: str) -> CoefficientRing:
    text = text.strip()
    if text == "Integers":
        return INTEGERS
    if text == "KOEven":
        return KO_EVEN
    for prefix, cls in (("IntegersMod", IntegersMod), ("PrimeField", PrimeField)):
        if text.startswith(prefix + "(") and text.endswith(")"):
            try:
                m = int(text[len(prefix) + 1 : -1])
            except ValueError:
                raise InputError(f"bad modulus in coefficient ring {text!r}") from None
            try:
                return cls(m)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
    raise InputError(f"unknown coefficient ring {text!r}")


def _parse_relation(text: str, coefficients, generators) -> Relation:
    scratch = RingPresentation(coefficients, generators, _RELATION_PARSE_TRUNCATION)
    series = parse_series(text, scratch)
    if series.is_zero():
        raise InputError(f"relation {text!r} is identically zero")
    return Relation(tuple(sorted(series.terms.items())))


def _load_presentation(data: dict) -> RingPresentation:
    try:
        ring_tbl = data["ring"]
        coefficients = parse_coefficient_ring(ring_tbl["coefficients"])
        truncation = int(ring_tbl["truncation"])
        gen_rows = ring_tbl["generators"]
    except KeyError as exc:
        raise InputError(f"missing required key {exc}") from exc
    generators = []
    for row in gen_rows:
        try:
            generators.append(
                Generator(row["name"], int(row["weight"]), int(row.get("degree", 0)))
            )
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad generator entry {row!r}: {exc}") from exc
    relations = [
        _parse_relation(text, coefficients, generators)
        for text in ring_tbl.get("relations", [])
    ]
    graded = bool(ring_tbl.get("graded", False))
    try:
        return RingPresentation(coefficients, generators, truncation, relations, graded)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_images_table(table: dict, pres: RingPresentation):
    images = []
    for g in pres.generators:
        if g.name not in table:
            raise InputError(f"no image given for generator {g.name!r}")
        images.append(parse_series(str(table[g.name]), pres))
    return images


@dataclass
class LoadedStructure:
    presentation: Optional[RingPresentation]
    adams: Optional[AdamsFamily] = None
    lambdas: Optional[LambdaFamily] = None
    k_model: Optional[KModelStructure] = None
    ko_model: Optional[KOModelStructure] = None
    graded: Optional[GradedPresentation] = None
    tower: Optional[FiniteGroupTower] = None
    kind: str = "ring"


def _load_adams(data: dict, pres: RingPresentation) -> Optional[AdamsFamily]:
    psi_tables = data.get("psi")
    if not psi_tables:
        return None
    entries: Dict[int, FilteredMap] = {}
    for key, table in psi_tables.items():
        try:
            k = int(key)
        except ValueError:
            raise InputError(f"psi table key {key!r} is not an integer") from None
        entries[k] = FilteredMap(pres, pres, _load_images_table(table, pres))
    if 1 not in entries:
        entries[1] = FilteredMap.identity(pres)
    return AdamsFamily(pres, entries)


def _load_lambda(data: dict, pres: RingPresentation) -> Optional[LambdaFamily]:
    lam_tables = data.get("lambda")
    if not lam_tables:
        return None
    by_k: Dict[int, dict] = {}
    for key, table in lam_tables.items():
        try:
            by_k[int(key)] = table
        except ValueError:
            raise InputError(f"lambda table key {key!r} is not an integer") from None
    bound = max(by_k)
    rows = []
    for gi, g in enumerate(pres.generators):
        row = []
        for i in range(1, bound + 1):
            table = by_k.get(i, {})
            if g.name in table:
                row.append(parse_series(str(table[g.name]), pres))
            elif i == 1:
                row.append(pres.generator(g.name))
            else:
                row.append(pres.zero())
        rows.append(tuple(row))
    return LambdaFamily(pres, bound, tuple(rows))


def _load_group(row: dict):
    kind = row.get("kind", "table")
    if kind == "cyclic":
        return cyclic_group(int(row["order"]))
    if kind == "symmetric":
        return symmetric_group(int(row["degree"]))
    if kind == "table":
        return group_from_table(str(row.get("name", "G")), row["table"])
    raise InputError(f"unknown group kind {kind!r}")


def _load_tower(data: dict) -> FiniteGroupTower:
    level_rows = data.get("levels")
    if not level_rows:
        raise InputError("tower file needs at least one [[levels]] entry")
    groups = [_load_group(row) for row in level_rows]
    map_rows = data.get("maps", [])
    if len(map_rows) != len(groups) - 1:
        raise InputError("a tower of depth D needs exactly D-1 [[maps]] entries")
    maps: List[Homomorphism] = []
    for i, row in enumerate(map_rows):
        source, target = groups[i + 1], groups[i]
        kind = row.get("kind", "explicit")
        if kind == "identity":
            if source.order != target.order:
                raise InputError(f"map {i}: identity needs equal-order levels")
            maps.append(Homomorphism(source, target, tuple(range(source.order))))
        elif kind == "zero":
            maps.append(zero_homomorphism(source, target))
        elif kind == "reduction":
            if target.order == 0 or source.order % target.order:
                raise InputError(f"map {i}: reduction needs target order dividing source order")
            maps.append(
                Homomorphism(source, target, tuple(a % target.order for a in range(source.order)))
            )
        elif kind == "explicit":
            maps.append(Homomorphism(source, target, tuple(int(v) for v in row["images"])))
        else:
            raise InputError(f"unknown map kind {kind!r}")
    return FiniteGroupTower(tuple(groups), tuple(maps))


def load_structure_text(text: str) -> LoadedStructure:
    try:
        data = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise InputError(f"TOML syntax error: {exc}") from exc
    kind = data.get("kind", "ring")
    if kind == "tower":
        tower = _load_tower(data)
        # towers carry no ring; use a placeholder presentation slot
        return LoadedStructure(presentation=None, tower=tower, kind="tower")

    pres = _load_presentation(data)
    loaded = LoadedStructure(presentation=pres, kind=kind)
    loaded.adams = _load_adams(data, pres)
    loaded.lambdas = _load_lambda(data, pres)

    model = data.get("model", {})
    if "primes" in model:
        if loaded.adams is None:
            raise InputError("a K-model declaration needs psi tables")
        loaded.k_model = KModelStructure(loaded.adams, [int(p) for p in model["primes"]])

    ko_tbl = data.get("ko")
    if ko_tbl:
        if "action" not in ko_tbl:
            raise InputError("[ko] table needs an 'action' polynomial")
        series = parse_series(str(ko_tbl["action"]), pres)
        loaded.ko_model = KOModelStructure(series)

    if pres.graded or kind == "graded":
        loaded.graded = GradedPresentation(
            pres.coefficients,
            pres.generators,
            pres.relations,
            bound=int(data.get("bound")) if "bound" in data else None,
        )
    return loaded


def load_structure_file(path: str) -> LoadedStructure:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return load_structure_text(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


# -- writing ---------------------------------------------------------------------


def _coefficients_text(ring: CoefficientRing) -> str:
    return str(ring)


def dump_k_model(structure: KModelStructure) -> str:
    """Canonical TOML for a K-side model; stable ordering, hand-editable."""
    pres = structure.presentation
    lines = [
        'kind = "ring"',
        "",
        "[ring]",
        f'coefficients = "{_coefficients_text(pres.coefficients)}"',
        f"truncation = {pres.truncation}",
        "",
    ]
    for g in pres.generators:
        lines += [
            "[[ring.generators]]",
            f'name = "{g.name}"',
            f"weight = {g.weight}",
            f"degree = {g.degree}",
            "",
        ]
    lines += ["[model]", f"primes = [{', '.join(str(p) for p in structure.primes)}]", ""]
    name = pres.generators[0].name
    for k in structure.family.ks:
        if k == 1:
            continue
        lines += [f"[psi.{k}]", f'{name} = "{format_series(structure.family.psi(k).images[0])}"', ""]
    return "\n".join(lines)
