"""
Base model definitions for EasyDamas.

Provides the common pydantic base class used by all domain models. Models
hold numpy arrays, so arbitrary types are allowed and arrays are rendered as
nested lists when serialised.
"""

import json
from typing import Any

import numpy as np
from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    return value


class BaseModel(PydanticBaseModel):
    """
    Base model with common configuration for all EasyDamas models.

    Features:
    - numpy arrays allowed as field types
    - Validation on assignment
    - dict / JSON export
    """

    model_config = ConfigDict(
        populate_by_name=True,
        validate_assignment=True,
        arbitrary_types_allowed=True,
        str_strip_whitespace=True,
    )

    def to_dict(self) -> dict[str, Any]:
        """Convert model to a JSON-compatible dictionary."""
        return _jsonable(self.model_dump(exclude_none=True))

    def to_json(self, indent: int | None = None) -> str:
        """Convert model to a JSON string."""
        return json.dumps(self.to_dict(), indent=indent)


class FrozenModel(BaseModel):
    """Immutable variant for geometry values shared across threads."""

    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
    )
