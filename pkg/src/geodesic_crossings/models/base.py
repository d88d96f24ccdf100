"""Base model for serialized artifacts."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, ValidationError
from typing_extensions import Self

from ..exceptions import InvalidSpec


class GeoBaseModel(BaseModel):
    """Base model for all JSON-facing objects.

    - extra="ignore": artifacts written by newer versions still load
    - populate_by_name: accepts both JSON aliases (partA) and field names (part_a)
    """

    model_config = ConfigDict(
        extra="ignore",
        populate_by_name=True,
    )

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> Self:
        """Validate a decoded JSON object.

        Args:
            data: Decoded JSON object

        Returns:
            Validated model instance

        Raises:
            InvalidSpec: If the object does not match the model
        """
        try:
            return cls.model_validate(data)
        except ValidationError as err:
            raise InvalidSpec(
                f"Invalid {cls.__name__}", details=err.errors(include_url=False)
            ) from err

    @classmethod
    def from_json_text(cls, text: str) -> Self:
        """Validate a JSON document given as text."""
        try:
            return cls.model_validate_json(text)
        except ValidationError as err:
            raise InvalidSpec(
                f"Invalid {cls.__name__}", details=err.errors(include_url=False)
            ) from err
