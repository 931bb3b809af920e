/**
 * Review screens: knowledge-base link candidates (with an explicit
 * "None of the above"), post-curation recommendation review, and the
 * mixed-initiative next-step loop (accept, edit-then-accept, or type your
 * own; the next set is requested automatically after each step).
 */

import type { SessionStore } from "../state.js";

export class LinkReviewScreen {
  private root: HTMLElement | null = null;

  constructor(private readonly store: SessionStore) {
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
    for (const variable of this.store.doc.script.variables) {
      const section = document.createElement("section");
      section.className = "link-review";
      const heading = document.createElement("h3");
      heading.textContent = `${variable.label} (${variable.entity_type})` +
        (variable.kb_link ? ` — linked to ${variable.kb_link}` : "");
      section.append(heading);

      const set = this.store.linkSets.get(variable.id);
      if (!set) {
        const fetchButton = document.createElement("button");
        fetchButton.textContent = "Fetch candidates";
        fetchButton.addEventListener("click", () => {
          void this.store.loadLinkCandidates(variable.id);
        });
        section.append(fetchButton);
      } else {
        const list = document.createElement("ul");
        for (const candidate of set.candidates) {
          const item = document.createElement("li");
          const accept = document.createElement("button");
          accept.className = "link-accept";
          accept.dataset.qid = candidate.qid;
          accept.textContent = `${candidate.qid} ${candidate.label}`;
          accept.addEventListener("click", () => {
            void this.store
              .decideLink(variable.id, set.set_version, candidate.qid)
              .catch(() => undefined);
          });
          const desc = document.createElement("span");
          desc.textContent = ` — ${candidate.description}`;
          item.append(accept, desc);
          list.append(item);
        }
        const none = document.createElement("li");
        const noneButton = document.createElement("button");
        noneButton.className = "link-none";
        noneButton.textContent = "None of the above";
        noneButton.addEventListener("click", () => {
          void this.store.decideLink(variable.id, set.set_version, null).catch(() => undefined);
        });
        none.append(noneButton);
        list.append(none);
        section.append(list);
      }
      root.append(section);
    }
  }
}

export class RecommendationReviewScreen {
  private root: HTMLElement | null = null;

  constructor(private readonly store: SessionStore) {
    store.subscribe(() => this.render());
  }

  mount(root: HTMLElement): void {
    this.root = root;
    this.render();
  }

  private render(): void {
    if (!this.root) return;
    const root = this.root;
    root.textContent = "";

    const generate = document.createElement("button");
    generate.className = "generate-recommendations";
    generate.textContent = "Suggest overlooked events";
    generate.addEventListener("click", () => {
      void this.store.loadRecommendations().catch(() => undefined);
    });
    root.append(generate);

    if (this.store.lastError) {
      const banner = document.createElement("p");
      banner.className = "error-banner";
      banner.textContent = this.store.lastError.message;
      root.append(banner);
    }

    const batch = this.store.recommendationBatch;
    if (!batch) return;
    const list = document.createElement("ul");
    list.className = "recommendations";
    for (const suggestion of batch.suggestions) {
      const item = document.createElement("li");
      const text = document.createElement("span");
      text.textContent = `${suggestion.text} [${suggestion.decision}]`;
      item.append(text);
      if (suggestion.decision === "pending") {
        for (const decision of ["accepted", "rejected"] as const) {
          const button = document.createElement("button");
          button.className = `rec-${decision}`;
          button.dataset.suggestionId = suggestion.id;
          button.textContent = decision === "accepted" ? "accept" : "reject";
          button.addEventListener("click", () => {
            void this.store
              .decideRecommendation(batch.batch, suggestion.id, decision)
              .catch(() => undefined);
          });
          item.append(button);
        }
      }
      list.append(item);
    }
    root.append(list);
  }
}

export class MixedInitiativeScreen {
  private root: HTMLElement | null = null;

  constructor(private readonly store: SessionStore) {
    store.subscribe(() => this.render());
  }

  mount(root: HTMLElement): void {
    this.root = root;
    this.render();
  }

  /** After every recorded step the next option set is requested
   * automatically, keeping the loop going. */
  private advance(promise: Promise<void>): void {
    void promise
      .then(() => this.store.nextOptionSet())
      .then(() => this.render())
      .catch(() => undefined);
  }

  private render(): void {
    if (!this.root || !this.store.doc) return;
    const root = this.root;
    root.textContent = "";

    const steps = document.createElement("ol");
    for (const event of this.store.doc.script.events) {
      const item = document.createElement("li");
      item.textContent = `${event.text} (${event.provenance})`;
      steps.append(item);
    }
    root.append(steps);

    const set = this.store.optionSet;
    if (!set) {
      const start = document.createElement("button");
      start.className = "mixed-start";
      start.textContent = "Suggest next step";
      start.addEventListener("click", () => {
        void this.store.nextOptionSet().catch(() => undefined);
      });
      root.append(start);
      return;
    }

    const list = document.createElement("ul");
    list.className = "option-set";
    set.options.forEach((option, index) => {
      const item = document.createElement("li");
      const accept = document.createElement("button");
      accept.className = "option-accept";
      accept.textContent = option.text;
      accept.addEventListener("click", () => {
        this.advance(this.store.decideOption(set.set_id, "accepted", index));
      });
      const edit = document.createElement("button");
      edit.className = "option-edit";
      edit.textContent = "edit";
      edit.addEventListener("click", () => {
        const edited = window.prompt("Edit the suggestion", option.text);
        if (edited && edited !== option.text) {
          this.advance(this.store.decideOption(set.set_id, "edited", index, edited));
        }
      });
      item.append(accept, edit);
      list.append(item);
    });
    root.append(list);

    const ownForm = document.createElement("form");
    ownForm.className = "own-step";
    const own = document.createElement("input");
    own.placeholder = "…or type your own next step";
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Use mine";
    ownForm.append(own, submit);
    ownForm.addEventListener("submit", (ev) => {
      ev.preventDefault();
      this.advance(
        this.store.decideOption(set.set_id, "rejected_all", undefined, undefined, own.value),
      );
    });
    root.append(ownForm);
  }
}
