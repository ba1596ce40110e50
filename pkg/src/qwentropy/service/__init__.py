"""HTTP service exposing the walk/entropy operations (FastAPI)."""

from .app import app, create_app

__all__ = ["app", "create_app"]
