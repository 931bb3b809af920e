"""Live embedding/generation sidecar for the script-curation engine."""

__version__ = "0.1.0"
