"""Instance files and the ``xmodhom`` command."""

from .instance import Instance, load_instance, parse_instance, serialize_instance
from .main import build_parser, main

__all__ = ["Instance", "build_parser", "load_instance", "main", "parse_instance", "serialize_instance"]
