"""HTTP API for the scheduling workbench."""
