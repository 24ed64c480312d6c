"""HTTP service wrapping the tree-shift toolkit."""

from .app import app, create_app

__all__ = ["app", "create_app"]
