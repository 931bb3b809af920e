/**
 * Layered layout for the script graph: nodes are placed in layers by
 * longest-path depth from the roots, so unordered siblings sit side by
 * side in the same row and every drawn edge points downward.
 */

import type { GraphDoc } from "./api.js";

export interface LayoutNode {
  id: string;
  label: string;
  text: string;
  layer: number;
  slot: number;
  args: { label: string; role: string }[];
}

export interface GraphLayout {
  layers: string[][];
  nodes: Map<string, LayoutNode>;
  edges: { before: string; after: string }[];
}

export function layerByDepth(
  nodeIds: string[],
  edges: { before: string; after: string }[],
): Map<string, number> {
  const incoming = new Map<string, number>(nodeIds.map((id) => [id, 0]));
  const successors = new Map<string, string[]>(nodeIds.map((id) => [id, []]));
  for (const { before, after } of edges) {
    successors.get(before)?.push(after);
    incoming.set(after, (incoming.get(after) ?? 0) + 1);
  }
  const depth = new Map<string, number>(nodeIds.map((id) => [id, 0]));
  const queue = nodeIds.filter((id) => (incoming.get(id) ?? 0) === 0);
  while (queue.length > 0) {
    const node = queue.shift()!;
    for (const next of successors.get(node) ?? []) {
      depth.set(next, Math.max(depth.get(next) ?? 0, (depth.get(node) ?? 0) + 1));
      const remaining = (incoming.get(next) ?? 0) - 1;
      incoming.set(next, remaining);
      if (remaining === 0) queue.push(next);
    }
  }
  return depth;
}

export function layoutGraph(doc: GraphDoc): GraphLayout {
  const ids = doc.nodes.map((n) => n.id);
  const depth = layerByDepth(ids, doc.edges);
  const layerCount = ids.length ? Math.max(...depth.values()) + 1 : 0;
  const layers: string[][] = Array.from({ length: layerCount }, () => []);
  const nodes = new Map<string, LayoutNode>();
  for (const node of doc.nodes) {
    const layer = depth.get(node.id) ?? 0;
    const slot = layers[layer]!.length;
    layers[layer]!.push(node.id);
    nodes.set(node.id, {
      id: node.id,
      label: node.label,
      text: node.text,
      layer,
      slot,
      args: node.args.map((a) => ({ label: a.label, role: a.role })),
    });
  }
  return { layers, nodes, edges: doc.edges };
}
