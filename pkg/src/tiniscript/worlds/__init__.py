"""Bundled world fixtures (*.world.json)."""
