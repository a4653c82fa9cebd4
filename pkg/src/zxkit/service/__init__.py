"""HTTP front end: pydantic models, pure operations, FastAPI wiring."""

from .app import create_app

__all__ = ["create_app"]
