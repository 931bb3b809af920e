"""Script data model: events, shared arguments, and the partial order."""

from scriptforge.model.graph import export_graph
from scriptforge.model.script import (
    Direction,
    Event,
    OrderRelation,
    Provenance,
    ReferenceVariable,
    Script,
    validate_script,
)

__all__ = [
    "Direction",
    "Event",
    "OrderRelation",
    "Provenance",
    "ReferenceVariable",
    "Script",
    "export_graph",
    "validate_script",
]
