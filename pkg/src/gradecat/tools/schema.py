"""
Reading and writing the JSON documents: categories, gradings, conjugation
families, base automorphisms and diagram files.

Input files are read with YAML (a superset of JSON), so hand-written YAML
works too. Output is canonical JSON with sorted keys.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import yaml

from ..algebra.fields import FieldConfig
from ..algebra.groups import Group, group_from_json
from ..categories.fincat import FinCategory, HomKey
from ..categories.grading import ConjugationFamily, Grading
from ..coverings.morphisms import BaseAutomorphism
from ..errors import DomainError, SchemaError


def dumps(obj: Any) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_document(path) -> Any:
    """
    Parse a JSON or YAML file.

    Raises:
        OSError: if the file cannot be read
        SchemaError: if it does not parse
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SchemaError(f"{path} does not parse: {e}")


def _require_mapping(data: Any, pointer: str) -> Mapping:
    if not isinstance(data, Mapping):
        raise SchemaError("expected an object", pointer)
    return data


def _require_list(data: Any, pointer: str) -> List:
    if not isinstance(data, list):
        raise SchemaError("expected a list", pointer)
    return data


def _check_keys(data: Mapping, required: Tuple[str, ...], optional: Tuple[str, ...], pointer: str):
    for key in required:
        if key not in data:
            raise SchemaError(f"missing field '{key}'", _join(pointer, key))
    for key in data:
        if key not in required and key not in optional:
            raise SchemaError(f"unknown field '{key}'", _join(pointer, str(key)))


def _join(pointer: str, key: str) -> str:
    return f"{pointer}.{key}" if pointer else key


def _scalar(K: FieldConfig, value: Any, pointer: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"coefficient {value!r} must be a decimal string", pointer)
    try:
        return K.scalar(value)
    except DomainError as e:
        raise SchemaError(str(e), pointer)


def parse_hom_key(key: Any, objects, pointer: str) -> HomKey:
    if not isinstance(key, str) or key.count("->") != 1:
        raise SchemaError(f"hom-space key {key!r} must look like 'b->c'", pointer)
    b, c = key.split("->")
    for obj in (b, c):
        if obj not in objects:
            raise SchemaError(f"unknown object '{obj}'", pointer)
    return (b, c)


# Categories

def parse_field(data: Any, pointer: str = "field") -> FieldConfig:
    data = _require_mapping(data, pointer)
    kind = data.get("type")
    if kind == "Q":
        _check_keys(data, ("type",), (), pointer)
        return FieldConfig.rationals()
    if kind == "Fp":
        _check_keys(data, ("type", "p"), (), pointer)
        p = data["p"]
        if isinstance(p, bool) or not isinstance(p, int):
            raise SchemaError("characteristic must be an integer", _join(pointer, "p"))
        try:
            return FieldConfig.prime(p)
        except DomainError as e:
            raise SchemaError(str(e), _join(pointer, "p"))
    raise SchemaError(f"field type must be 'Q' or 'Fp', got {kind!r}", _join(pointer, "type"))


def _sparse_vector(K: FieldConfig, entries: Any, basis: Tuple[str, ...], pointer: str):
    entries = _require_list(entries, pointer)
    vec = list(K.zeros(len(basis)))
    for i, entry in enumerate(entries):
        here = f"{pointer}[{i}]"
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError("entries are [label, coefficient] pairs", here)
        label, coeff = entry
        if label not in basis:
            raise SchemaError(f"'{label}' is not a basis vector of this hom-space", here)
        vec[basis.index(label)] += _scalar(K, coeff, here)
    return tuple(vec)


def parse_category(data: Any) -> FinCategory:
    """
    Category from its JSON description.

    Raises:
        SchemaError: with a pointer to the offending field
    """
    data = _require_mapping(data, "")
    _check_keys(data, ("field", "objects", "homs", "identity"), ("compose",), "")
    K = parse_field(data["field"])
    objects = _require_list(data["objects"], "objects")
    for i, b in enumerate(objects):
        if not isinstance(b, str) or not b or "->" in b:
            raise SchemaError(f"object label {b!r} is not a plain string", f"objects[{i}]")
    if len(set(objects)) != len(objects):
        raise SchemaError("object labels are not unique", "objects")

    homs: Dict[HomKey, Tuple[str, ...]] = {}
    for key, labels in _require_mapping(data["homs"], "homs").items():
        pointer = f"homs.{key}"
        hk = parse_hom_key(key, objects, pointer)
        labels = _require_list(labels, pointer)
        for i, label in enumerate(labels):
            if not isinstance(label, str) or not label:
                raise SchemaError("basis labels are non-empty strings", f"{pointer}[{i}]")
        homs[hk] = tuple(labels)
    seen: Dict[str, str] = {}
    for hk, labels in homs.items():
        for i, label in enumerate(labels):
            if label in seen:
                raise SchemaError(f"basis label '{label}' is used twice", f"homs.{hk[0]}->{hk[1]}[{i}]")
            seen[label] = hk

    identity = _require_mapping(data["identity"], "identity")
    identities = {}
    for b in objects:
        if b not in identity:
            raise SchemaError(f"object {b} has no identity", f"identity.{b}")
        identities[b] = _sparse_vector(K, identity[b], homs.get((b, b), ()), f"identity.{b}")
    for b in identity:
        if b not in objects:
            raise SchemaError(f"unknown object '{b}'", f"identity.{b}")

    composites = {}
    for i, entry in enumerate(_require_list(data.get("compose", []), "compose")):
        pointer = f"compose[{i}]"
        entry = _require_mapping(entry, pointer)
        _check_keys(entry, ("g", "f", "result"), (), pointer)
        g, f = entry["g"], entry["f"]
        for name, label in (("g", g), ("f", f)):
            if label not in seen:
                raise SchemaError(f"unknown basis label {label!r}", f"{pointer}.{name}")
        if seen[f][1] != seen[g][0]:
            raise SchemaError(f"{g}∘{f} is not composable", pointer)
        if (g, f) in composites:
            raise SchemaError(f"composite {g}∘{f} is listed twice", pointer)
        target = (seen[f][0], seen[g][1])
        composites[(g, f)] = _sparse_vector(K, entry["result"], homs.get(target, ()), f"{pointer}.result")
    try:
        return FinCategory.build(K, objects, homs, identities, composites)
    except DomainError as e:
        raise SchemaError(str(e), "")


# Groups and gradings

def parse_group(data: Any, pointer: str = "group") -> Group:
    data = _require_mapping(data, pointer)
    try:
        return group_from_json(data)
    except KeyError as e:
        raise SchemaError(f"missing field {e}", pointer)
    except (DomainError, TypeError, ValueError) as e:
        raise SchemaError(str(e), pointer)


def _element(group: Group, value: Any, pointer: str):
    try:
        return group.parse(value)
    except (DomainError, TypeError, ValueError) as e:
        raise SchemaError(str(e), pointer)


def parse_grading(data: Any, cat: FinCategory) -> Grading:
    """
    Grading of cat from its JSON description; omitted hom-spaces have no degrees.

    Raises:
        SchemaError: with a pointer to the offending field
    """
    data = _require_mapping(data, "")
    _check_keys(data, ("group", "degrees"), ("basis_change", "labels"), "")
    group = parse_group(data["group"])
    K = cat.field
    degrees = {}
    for key, values in _require_mapping(data["degrees"], "degrees").items():
        pointer = f"degrees.{key}"
        hk = parse_hom_key(key, cat.objects, pointer)
        values = _require_list(values, pointer)
        if len(values) != cat.dim(*hk):
            raise SchemaError(f"expected {cat.dim(*hk)} degrees, got {len(values)}", pointer)
        degrees[hk] = [_element(group, v, f"{pointer}[{i}]") for i, v in enumerate(values)]
    for hk, basis in cat.homs.items():
        if basis and hk not in degrees:
            raise SchemaError(f"no degrees for {hk[0]}->{hk[1]}", f"degrees.{hk[0]}->{hk[1]}")

    changes = {}
    for key, rows in _require_mapping(data.get("basis_change", {}), "basis_change").items():
        pointer = f"basis_change.{key}"
        hk = parse_hom_key(key, cat.objects, pointer)
        n = cat.dim(*hk)
        rows = _require_list(rows, pointer)
        if len(rows) != n:
            raise SchemaError(f"expected {n} rows", pointer)
        parsed = []
        for i, row in enumerate(rows):
            row = _require_list(row, f"{pointer}[{i}]")
            if len(row) != n:
                raise SchemaError(f"expected {n} entries", f"{pointer}[{i}]")
            parsed.append(tuple(_scalar(K, a, f"{pointer}[{i}][{j}]") for j, a in enumerate(row)))
        changes[hk] = tuple(parsed)

    labels = {}
    for key, names in _require_mapping(data.get("labels", {}), "labels").items():
        pointer = f"labels.{key}"
        hk = parse_hom_key(key, cat.objects, pointer)
        names = _require_list(names, pointer)
        if len(names) != cat.dim(*hk) or not all(isinstance(n, str) for n in names):
            raise SchemaError(f"expected {cat.dim(*hk)} string labels", pointer)
        labels[hk] = tuple(names)
    return Grading.build(cat, group, degrees, changes, labels)


def parse_family(data: Any, cat: FinCategory, group: Group) -> ConjugationFamily:
    """Conjugation family {object: payload}; must be total on objects."""
    data = _require_mapping(data, "")
    values = {}
    for b in cat.objects:
        if b not in data:
            raise SchemaError(f"no entry for object {b}", b)
        values[b] = _element(group, data[b], b)
    for b in data:
        if b not in cat.objects:
            raise SchemaError(f"unknown object '{b}'", str(b))
    return ConjugationFamily(values)


def parse_automorphism(data: Any, cat: FinCategory, default_name: str = "J") -> BaseAutomorphism:
    """Base automorphism {"name": str, "matrices": {"b->c": rows}}."""
    data = _require_mapping(data, "")
    _check_keys(data, ("matrices",), ("name",), "")
    name = data.get("name", default_name)
    if not isinstance(name, str) or not name:
        raise SchemaError("name must be a non-empty string", "name")
    K = cat.field
    matrices = {}
    for key, rows in _require_mapping(data["matrices"], "matrices").items():
        pointer = f"matrices.{key}"
        hk = parse_hom_key(key, cat.objects, pointer)
        rows = _require_list(rows, pointer)
        matrices[hk] = [
            [_scalar(K, a, f"{pointer}[{i}][{j}]") for j, a in enumerate(_require_list(r, f"{pointer}[{i}]"))]
            for i, r in enumerate(rows)
        ]
    try:
        return BaseAutomorphism.build(cat, matrices, name)
    except DomainError as e:
        raise SchemaError(str(e), "matrices")


# Files

def load_category(path) -> FinCategory:
    return _at(path, parse_category, load_document(path))


def load_grading(path, cat: FinCategory) -> Grading:
    return _at(path, lambda d: parse_grading(d, cat), load_document(path))


def load_family(path, cat: FinCategory, group: Group) -> ConjugationFamily:
    return _at(path, lambda d: parse_family(d, cat, group), load_document(path))


def load_automorphism(path, cat: FinCategory) -> BaseAutomorphism:
    return _at(path, lambda d: parse_automorphism(d, cat, Path(path).stem), load_document(path))


def _at(path, parse, data):
    try:
        return parse(data)
    except SchemaError as e:
        raise SchemaError(f"{path}: {e.reason}", e.pointer)


class DiagramFile:
    """A diagram file with its referenced documents loaded; paths are relative to the file."""

    def __init__(self, path):
        self.path = Path(path)
        data = _require_mapping(load_document(self.path), "")
        _check_keys(data, ("category", "base_object", "gradings"), ("declared_J",), "")
        root = self.path.parent
        self.category = load_category(root / self._path(data["category"], "category"))
        base = data["base_object"]
        if base not in self.category.objects:
            raise SchemaError(f"unknown object {base!r}", "base_object")
        self.base_object: str = base
        self.gradings: Dict[str, Grading] = {}
        for i, ref in enumerate(_require_list(data["gradings"], "gradings")):
            p = root / self._path(ref, f"gradings[{i}]")
            if p.stem in self.gradings:
                raise SchemaError(f"two gradings are named {p.stem}", f"gradings[{i}]")
            self.gradings[p.stem] = load_grading(p, self.category)
        self.declared_J: List[BaseAutomorphism] = [
            load_automorphism(root / self._path(ref, f"declared_J[{i}]"), self.category)
            for i, ref in enumerate(_require_list(data.get("declared_J", []), "declared_J"))
        ]

    @staticmethod
    def _path(value: Any, pointer: str) -> str:
        if not isinstance(value, str) or not value:
            raise SchemaError("expected a file path", pointer)
        return value


def canonical_text(path, category_path: Optional[str] = None) -> str:
    """
    Parse then serialize a category file, or a grading file when category_path is given.

    Raises:
        SchemaError: if the file does not parse against its schema
    """
    if category_path is None:
        return dumps(load_category(path).to_json())
    return dumps(load_grading(path, load_category(category_path)).to_json())
