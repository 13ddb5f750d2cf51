"""File formats, settings, console output and the fixture corpus."""
