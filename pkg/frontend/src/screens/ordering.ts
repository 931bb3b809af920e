/**
 * Ordering and arguments: pairwise before-relations, multi-select
 * anchoring against a pivot, shared-argument creation with role options
 * constrained by the ontology, and the live layered graph.
 */

import type { GraphDoc, OntologyDoc } from "../api.js";
import { layoutGraph } from "../graph.js";
import type { SessionStore } from "../state.js";

export class OrderingScreen {
  private root: HTMLElement | null = null;
  private graphDoc: GraphDoc | null = null;

  constructor(
    private readonly store: SessionStore,
    private readonly ontology: OntologyDoc,
  ) {
    store.subscribe(() => void this.refreshGraph());
  }

  mount(root: HTMLElement): void {
    this.root = root;
    void this.refreshGraph();
  }

  private async refreshGraph(): Promise<void> {
    if (!this.store.doc) return;
    this.graphDoc = await this.store.api.graph(this.store.scriptId);
    this.render();
  }

  private eventOptions(): HTMLOptionElement[] {
    const doc = this.store.doc!;
    return doc.script.events.map((ev, i) => {
      const option = document.createElement("option");
      option.value = ev.id;
      option.textContent = `E${i + 1}: ${ev.text}`;
      return option;
    });
  }

  private render(): void {
    if (!this.root || !this.store.doc) return;
    const root = this.root;
    root.textContent = "";

    if (this.store.lastError) {
      const banner = document.createElement("p");
      banner.className = "error-banner";
      banner.textContent = this.store.lastError.message;
      const details = this.store.lastError.details;
      if (Array.isArray(details["cycle"])) {
        banner.textContent += ` (path: ${(details["cycle"] as string[]).join(" -> ")})`;
      }
      root.append(banner);
    }

    // pairwise before
    const pairForm = document.createElement("form");
    pairForm.className = "pair-order";
    const before = document.createElement("select");
    before.name = "before";
    before.append(...this.eventOptions());
    const after = document.createElement("select");
    after.name = "after";
    after.append(...this.eventOptions());
    const addPair = document.createElement("button");
    addPair.type = "submit";
    addPair.textContent = "before";
    pairForm.append(before, addPair, after);
    pairForm.addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.store.orderBefore(before.value, after.value).catch(() => undefined);
    });
    root.append(pairForm);

    // anchoring
    const anchorForm = document.createElement("form");
    anchorForm.className = "anchor";
    const selected = document.createElement("select");
    selected.multiple = true;
    selected.name = "selected";
    selected.append(...this.eventOptions());
    const direction = document.createElement("select");
    direction.name = "direction";
    for (const value of ["before", "after"] as const) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      direction.append(option);
    }
    const pivot = document.createElement("select");
    pivot.name = "pivot";
    pivot.append(...this.eventOptions());
    const anchorButton = document.createElement("button");
    anchorButton.type = "submit";
    anchorButton.textContent = "Anchor";
    anchorForm.append(selected, direction, pivot, anchorButton);
    anchorForm.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const chosen = Array.from(selected.selectedOptions).map((o) => o.value);
      void this.store
        .anchor(chosen, pivot.value, direction.value as "before" | "after")
        .catch(() => undefined);
    });
    root.append(anchorForm);

    root.append(this.renderVariableForm());
    if (this.graphDoc) root.append(renderGraph(this.graphDoc));
  }

  private renderVariableForm(): HTMLElement {
    const doc = this.store.doc!;
    const form = document.createElement("form");
    form.className = "variable-form";

    const label = document.createElement("input");
    label.name = "label";
    label.placeholder = "argument name, e.g. buyer";

    const entityType = document.createElement("select");
    entityType.name = "entity-type";
    for (const e of this.ontology.entity_types) {
      const option = document.createElement("option");
      option.value = e.id;
      option.textContent = `${e.id} — ${e.name}`;
      entityType.append(option);
    }

    // one role dropdown per typed event; options come from the ontology's
    // constraints for that event's type
    const roleSelects: { eventId: string; select: HTMLSelectElement }[] = [];
    const bindings = document.createElement("div");
    bindings.className = "bindings";
    for (const ev of doc.script.events) {
      if (!ev.event_type) continue;
      const typeDef = this.ontology.event_types.find((t) => t.id === ev.event_type);
      if (!typeDef) continue;
      const row = document.createElement("label");
      row.textContent = `${ev.text} — role: `;
      const select = document.createElement("select");
      select.dataset.eventId = ev.id;
      const none = document.createElement("option");
      none.value = "";
      none.textContent = "(not involved)";
      select.append(none);
      for (const role of typeDef.roles) {
        const option = document.createElement("option");
        option.value = role.name;
        option.textContent = `${role.name} [${role.entity_types.join(", ")}]`;
        select.append(option);
      }
      row.append(select);
      bindings.append(row);
      roleSelects.push({ eventId: ev.id, select });
    }

    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Create shared argument";
    form.append(label, entityType, bindings, submit);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const chosen = roleSelects
        .filter(({ select }) => select.value)
        .map(({ eventId, select }) => ({ event_id: eventId, role: select.value }));
      void this.store
        .createVariable(label.value, entityType.value, chosen)
        .catch(() => undefined);
    });
    return form;
  }
}

export function renderGraph(doc: GraphDoc): HTMLElement {
  const layout = layoutGraph(doc);
  const container = document.createElement("div");
  container.className = "graph";
  for (const layer of layout.layers) {
    const row = document.createElement("div");
    row.className = "graph-layer"; // unordered siblings share a row
    for (const id of layer) {
      const node = layout.nodes.get(id)!;
      const box = document.createElement("div");
      box.className = "graph-node";
      box.dataset.nodeId = node.id;
      const title = document.createElement("strong");
      title.textContent = `${node.label} ${node.text}`;
      box.append(title);
      for (const arg of node.args) {
        const chip = document.createElement("span");
        chip.className = "arg-chip";
        chip.textContent = `${arg.label}:${arg.role}`;
        box.append(chip);
      }
      row.append(box);
    }
    container.append(row);
  }
  const edges = document.createElement("p");
  edges.className = "graph-edges";
  edges.textContent = doc.edges.map((e) => `${e.before} -> ${e.after}`).join("   ");
  container.append(edges);
  return container;
}
