"""Bundled experiment configs for the roulette studies."""
