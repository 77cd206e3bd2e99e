"""Jinja2 environment for DOT and text report templates."""

from pathlib import Path
from typing import Any, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from src.preftree.config import settings
from src.preftree.core import fixed


TEMPLATE_DIR = Path(__file__).parent / "templates"


def _dot_id(name: str) -> str:
    escaped = str(name).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _fixed(value: Optional[float]) -> str:
    return fixed(value, settings.decimals)


environment = Environment(
    loader=FileSystemLoader(TEMPLATE_DIR),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    autoescape=False,
)
environment.filters["fixed"] = _fixed
environment.filters["dot_id"] = _dot_id


def render(template: str, **context: Any) -> str:
    """Render a bundled template."""
    return environment.get_template(template).render(**context)
