import json
from importlib import resources
from typing import Any, Dict, Optional

from jsonschema import ValidationError, validate
from jsonschema.exceptions import SchemaError

REPORT_SCHEMA = "census_report.schema.json"


def load_schema(name: str = REPORT_SCHEMA) -> Dict[str, Any]:
    """Load a JSON schema shipped in ``drinfeld_census/schemas``."""
    text = resources.files("drinfeld_census.schemas").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


class ReportValidator:
    """Validator for serialized census reports."""

    def __init__(
        self,
        schema: Optional[Dict[str, Any]] = None,
        raise_on_error: Optional[bool] = None,
    ):
        """
        Initialize the report validator.

        Args:
            schema: JSON schema to validate against, defaults to the packaged report schema
            raise_on_error: If True, raise ValidationError instead of returning False
        """
        self.schema = schema if schema is not None else load_schema()
        self.raise_on_error = raise_on_error
        self.last_error: Optional[str] = None

    def validate_report(self, report_data: Dict[str, Any]) -> bool:
        """
        Validate report data against the schema.

        Args:
            report_data: The report as produced by ``report_to_dict``

        Returns:
            True if valid, False otherwise (unless raise_on_error=True)

        Raises:
            ValidationError: If raise_on_error=True and validation fails
        """
        try:
            validate(instance=report_data, schema=self.schema)
            self.last_error = None
            return True
        except ValidationError as e:
            self.last_error = f"{'/'.join(str(p) for p in e.absolute_path)}: {e.message}"
            if self.raise_on_error:
                raise
            return False
        except SchemaError as e:
            self.last_error = f"Invalid schema: {e.message}"
            if self.raise_on_error:
                raise
            return False

    def get_last_error(self) -> str:
        """Get the last validation error message."""
        if self.last_error is None:
            return ""

        return self.last_error
