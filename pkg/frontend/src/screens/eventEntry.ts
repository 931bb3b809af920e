/**
 * Event entry: free-text steps, three suggested type chips per event, and
 * a full-ontology picker as the always-available fallback. A provider
 * outage shows a non-blocking banner and leaves entry fully usable.
 */

import type { OntologyDoc } from "../api.js";
import type { SessionStore } from "../state.js";

export class EventEntryScreen {
  private root: HTMLElement | null = null;

  constructor(
    private readonly store: SessionStore,
    private readonly ontology: OntologyDoc,
  ) {
    store.subscribe(() => this.render());
  }

  mount(root: HTMLElement): void {
    this.root = root;
    this.render();
  }

  private render(): void {
    if (!this.root || !this.store.doc) return;
    const root = this.root;
    root.textContent = "";

    const form = document.createElement("form");
    form.className = "event-entry";
    const input = document.createElement("input");
    input.type = "text";
    input.placeholder = "enter an event, e.g. go to a car dealership";
    input.name = "event-text";
    const button = document.createElement("button");
    button.type = "submit";
    button.textContent = "Add event";
    form.append(input, button);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const text = input.value;
      if (!text.trim()) return;
      input.value = "";
      void this.store
        .addEvent(text)
        .then((eventId) => this.store.loadTypeSuggestions(eventId))
        .catch(() => undefined); // server message already in lastError
    });
    root.append(form);

    if (this.store.lastError) {
      const banner = document.createElement("p");
      banner.className = "error-banner";
      banner.textContent = this.store.lastError.message;
      root.append(banner);
    }

    const list = document.createElement("ol");
    list.className = "event-list";
    for (const event of this.store.doc.script.events) {
      const item = document.createElement("li");
      const text = document.createElement("span");
      text.textContent = event.text;
      text.className = "event-text";
      item.append(text);

      if (event.event_type) {
        const badge = document.createElement("span");
        badge.className = "type-badge";
        badge.textContent = event.event_type;
        item.append(badge);
      } else {
        item.append(this.renderTypeControls(event.id));
      }
      list.append(item);
    }
    root.append(list);
  }

  private renderTypeControls(eventId: string): HTMLElement {
    const wrap = document.createElement("span");
    wrap.className = "type-controls";
    const pending = this.store.typeSuggestions.get(eventId);

    if (pending?.providerDown) {
      const note = document.createElement("span");
      note.className = "provider-down";
      note.textContent = "suggestions unavailable — pick a type below";
      wrap.append(note);
    } else if (pending) {
      for (const suggestion of pending.suggestions) {
        const chip = document.createElement("button");
        chip.type = "button";
        chip.className = "type-chip";
        chip.dataset.typeId = suggestion.type_id;
        chip.textContent = `${suggestion.type_id} (${suggestion.score.toFixed(2)})`;
        chip.addEventListener("click", () => {
          void this.store.chooseType(eventId, suggestion.type_id).catch(() => undefined);
        });
        wrap.append(chip);
      }
    } else {
      const load = document.createElement("button");
      load.type = "button";
      load.className = "load-suggestions";
      load.textContent = "Suggest types";
      load.addEventListener("click", () => {
        void this.store.loadTypeSuggestions(eventId);
      });
      wrap.append(load);
    }

    // "pick a different type": the full ontology is always offered
    const picker = document.createElement("select");
    picker.className = "type-picker";
    const blank = document.createElement("option");
    blank.value = "";
    blank.textContent = "pick a different type…";
    picker.append(blank);
    for (const t of this.ontology.event_types) {
      const option = document.createElement("option");
      option.value = t.id;
      option.textContent = t.id;
      picker.append(option);
    }
    picker.addEventListener("change", () => {
      if (picker.value) {
        void this.store.chooseType(eventId, picker.value).catch(() => undefined);
      }
    });
    wrap.append(picker);
    return wrap;
  }
}
