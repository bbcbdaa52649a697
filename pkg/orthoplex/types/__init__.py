"""
Domain types. Import from the submodules, e.g.
``from orthoplex.types.config import SphericalConfig``.
"""
