"""Peer-review disputes as Dung abstract argumentation frameworks."""

from importlib import resources
from pathlib import Path

from .af_core import (
    Framework,
    Label,
    Labelling,
    Semantics,
    enumerate_extensions,
    grounded_extension,
    grounded_labelling,
    is_admissible,
    is_conflict_free,
    is_well_founded,
)
from .review_model import (
    ReviewArgument,
    ReviewArgumentId,
    ReviewFramework,
    parse_argument_id,
    parse_review_json,
    resolve,
    serialize_review_json,
    validate,
)

__version__ = "0.1.0"


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture, e.g. ``fixture_path("corpus/sample_review.json")``."""
    return Path(str(resources.files(__name__).joinpath("fixtures", name)))


__all__ = [
    "Framework", "Label", "Labelling", "Semantics", "enumerate_extensions",
    "grounded_extension", "grounded_labelling", "is_admissible", "is_conflict_free",
    "is_well_founded", "ReviewArgument", "ReviewArgumentId", "ReviewFramework",
    "parse_argument_id", "parse_review_json", "resolve", "serialize_review_json",
    "validate", "fixture_path",
]
