"""Graph document for interactive display of a script.

Nodes are events (with display labels and argument annotations); edges are
the transitive reduction of the stored order, so the drawing stays minimal
while preserving reachability.
"""

from __future__ import annotations

from typing import Any

from scriptforge.model import order as order_ops
from scriptforge.model.script import Script


def export_graph(script: Script) -> dict[str, Any]:
    labels = script.event_labels()
    args_by_event: dict[str, list[dict[str, str]]] = {ev.id: [] for ev in script.events}
    for var in script.variables:
        for event_id, role in sorted(var.participations):
            if event_id in args_by_event:
                args_by_event[event_id].append(
                    {"variable": var.id, "label": var.label, "role": role}
                )

    reduced = order_ops.transitive_reduction(script.event_ids(), script.edges)
    return {
        "script": script.id,
        "name": script.name,
        "nodes": [
            {
                "id": ev.id,
                "label": labels[ev.id],
                "text": ev.text,
                "event_type": ev.event_type,
                "args": args_by_event[ev.id],
            }
            for ev in script.events
        ],
        "edges": [{"before": u, "after": v} for u, v in reduced],
        "unordered": [[a, b] for a, b in script.unordered_pairs()],
    }
