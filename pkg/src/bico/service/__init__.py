"""FastAPI service wrapping the compute library."""

from .app import app, create_app

__all__ = ["app", "create_app"]
