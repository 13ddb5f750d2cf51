"""Access to the fixture corpus shipped with the package."""
from pathlib import Path
from typing import List

from ..categories.fincat import FinCategory
from ..categories.grading import Grading
from ..coverings.morphisms import BaseAutomorphism
from . import schema

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(kind: str, name: str) -> Path:
    """Path of fixtures/<kind>/<name>.json, e.g. ("categories", "kc2")."""
    return FIXTURE_DIR / kind / f"{name}.json"


def fixture_names(kind: str) -> List[str]:
    return sorted(p.stem for p in (FIXTURE_DIR / kind).glob("*.json"))


def load_category(name: str) -> FinCategory:
    return schema.load_category(fixture_path("categories", name))


def load_grading(name: str, category_name: str) -> Grading:
    return schema.load_grading(fixture_path("gradings", name), load_category(category_name))


def load_automorphism(name: str, category_name: str) -> BaseAutomorphism:
    return schema.load_automorphism(fixture_path("automorphisms", name), load_category(category_name))


def load_diagram(name: str) -> schema.DiagramFile:
    return schema.DiagramFile(fixture_path("diagrams", name))
