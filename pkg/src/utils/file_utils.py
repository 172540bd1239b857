"""File utilities: loading and saving instances, schedules and reports."""

import json
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Mapping, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from ..errors import SchemaError
from ..models import GeneratorSpec, Schedule, TaskSet

PathLike = Union[str, Path]
M = TypeVar("M", bound=BaseModel)


def jsonable(value: Any) -> Any:
    """Convert report values into JSON-compatible ones; rationals become strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json", by_alias=True)
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return value


def _location(error: Mapping[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ())) or "<root>"


class FileUtils:
    """Reads and writes the toolkit's JSON documents."""

    def read_document(self, path: PathLike) -> Any:
        """Parse a JSON file; decimals are kept exact.

        Raises:
            SchemaError: If the file is missing or is not valid JSON
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise SchemaError(f"{path}: cannot read file: {e}") from e
        return self.parse_document(text, str(path))

    def parse_document(self, text: str, source: str = "<input>") -> Any:
        try:
            return json.loads(text, parse_float=Decimal)
        except json.JSONDecodeError as e:
            raise SchemaError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from e

    def validate(self, model: Type[M], document: Any, source: str = "<input>") -> M:
        """Validate a parsed document, reporting the position of every error.

        Raises:
            SchemaError: If the document does not match ``model``
        """
        try:
            return model.model_validate(document)
        except ValidationError as e:
            errors = e.errors(include_url=False)
            details = "; ".join(f"{_location(err)}: {err['msg']}" for err in errors)
            raise SchemaError(f"{source}: {details}", errors=[
                {"loc": _location(err), "msg": err["msg"]} for err in errors
            ]) from e

    def load_instance(self, path: PathLike) -> TaskSet:
        return self.validate(TaskSet, self.read_document(path), str(path))

    def load_schedule(self, path: PathLike) -> Schedule:
        return self.validate(Schedule, self.read_document(path), str(path))

    def load_generator_spec(self, path: PathLike) -> GeneratorSpec:
        return self.validate(GeneratorSpec, self.read_document(path), str(path))

    def dumps(self, document: Any) -> str:
        """Deterministic JSON text for a model or report."""
        return json.dumps(jsonable(document), indent=2) + "\n"

    def write_document(self, document: Any, path: PathLike) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(document), encoding="utf-8")
        return path

    def save_instance(self, tasks: TaskSet, path: PathLike) -> Path:
        return self.write_document(tasks, path)

    def save_schedule(self, schedule: Schedule, path: PathLike) -> Path:
        return self.write_document(schedule, path)

    def save_report(self, report: Dict[str, Any], path: PathLike, title: str = "Report") -> Path:
        """Save a report as JSON, markdown or HTML depending on the suffix."""
        path = Path(path)
        suffix = path.suffix.lower()
        if suffix in (".md", ".markdown", ".html", ".htm"):
            from ..analyzers.report_generator import ReportGenerator

            generator = ReportGenerator()
            if suffix in (".md", ".markdown"):
                content = generator.generate_markdown_report(report, title)
            else:
                content = generator.generate_html_report(report, title)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            return path
        return self.write_document(report, path)
