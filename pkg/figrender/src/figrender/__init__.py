"""Figure rendering for ldpbounds CSV output."""

from .render import FigureSpec, SchemaError, main, render

__all__ = ["FigureSpec", "SchemaError", "main", "render"]
