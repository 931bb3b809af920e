/**
 * Session state for one curator working on one script.
 *
 * Tracks the server-confirmed document and version, every pending
 * machine-suggestion set by kind (each carrying its server-issued
 * version/stamp), and optimistic local edits awaiting confirmation.
 * Accepting from a superseded set is blocked here and — belt and braces —
 * rejected by the server with 409.
 */

import {
  ApiClient,
  ApiError,
  type LinkCandidateSet,
  type OptionSet,
  type RecommendationBatch,
  type ScriptDocument,
  type TypeSuggestion,
} from "./api.js";

export type Listener = () => void;

export interface PendingTypeSuggestions {
  eventId: string;
  suggestions: TypeSuggestion[];
  providerDown: boolean;
}

export class StaleSetError extends Error {
  constructor(kind: string) {
    super(`the ${kind} suggestions on screen are no longer current; refresh them first`);
  }
}

export class SessionStore {
  doc: ScriptDocument | null = null;
  lastError: ApiError | null = null;
  /** pending machine output, by kind */
  typeSuggestions = new Map<string, PendingTypeSuggestions>();
  linkSets = new Map<string, LinkCandidateSet>();
  recommendationBatch: RecommendationBatch | null = null;
  optionSet: OptionSet | null = null;
  /** optimistic edits not yet confirmed by the server */
  pendingMutations = new Set<string>();

  private listeners: Listener[] = [];
  private mutationCounter = 0;

  constructor(readonly api: ApiClient, public scriptId: string) {}

  get version(): number {
    if (!this.doc) throw new Error("no script loaded");
    return this.doc.script.version;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  async refresh(): Promise<void> {
    this.doc = await this.api.getScript(this.scriptId);
    this.emit();
  }

  /**
   * Run one mutation against the server. On a version conflict the
   * document is reloaded and, when `retryOnConflict`, the mutation is
   * retried once against the fresh version (safe for idempotent edits the
   * curator just issued). Other domain errors land in `lastError` for the
   * screens to display verbatim.
   */
  async mutate<T extends { version?: number }>(
    run: (version: number) => Promise<T>,
    options: { retryOnConflict?: boolean; key?: string } = {},
  ): Promise<T> {
    const key = options.key ?? `mutation-${++this.mutationCounter}`;
    this.pendingMutations.add(key);
    this.lastError = null;
    try {
      try {
        return await run(this.version);
      } catch (error) {
        if (error instanceof ApiError && error.code === "version_conflict" && options.retryOnConflict) {
          await this.refresh();
          return await run(this.version);
        }
        throw error;
      }
    } catch (error) {
      if (error instanceof ApiError) {
        this.lastError = error;
        this.emit();
      }
      throw error;
    } finally {
      this.pendingMutations.delete(key);
      await this.refresh();
    }
  }

  // --- event entry ----------------------------------------------------------

  async addEvent(text: string): Promise<string> {
    const out = await this.mutate((v) => this.api.addEvent(this.scriptId, text, v));
    return out.event.id;
  }

  /** Fetch the three type chips; a provider outage degrades to the manual
   * picker instead of blocking entry. */
  async loadTypeSuggestions(eventId: string): Promise<PendingTypeSuggestions> {
    let pending: PendingTypeSuggestions;
    try {
      const body = await this.api.suggestTypes(this.scriptId, eventId, 3);
      pending = { eventId, suggestions: body.suggestions, providerDown: false };
    } catch (error) {
      if (error instanceof ApiError && error.status === 503) {
        pending = { eventId, suggestions: [], providerDown: true };
      } else {
        throw error;
      }
    }
    this.typeSuggestions.set(eventId, pending);
    this.emit();
    return pending;
  }

  /** Accept a chip or a manually picked type; the shown suggestion list
   * rides along so the choice is recorded for metrics. */
  async chooseType(eventId: string, typeId: string): Promise<void> {
    const shown = this.typeSuggestions.get(eventId)?.suggestions ?? [];
    await this.mutate((v) => this.api.assignType(this.scriptId, eventId, typeId, v, shown));
    this.typeSuggestions.delete(eventId);
  }

  // --- ordering and arguments -------------------------------------------------

  async orderBefore(before: string, after: string): Promise<void> {
    await this.mutate((v) => this.api.orderBefore(this.scriptId, before, after, v));
  }

  async anchor(selected: string[], pivot: string, direction: "before" | "after"): Promise<void> {
    await this.mutate((v) => this.api.anchor(this.scriptId, selected, pivot, direction, v));
  }

  async createVariable(
    label: string,
    entityType: string,
    bindings: { event_id: string; role: string }[],
  ): Promise<string> {
    const out = await this.mutate((v) =>
      this.api.createVariable(this.scriptId, label, entityType, bindings, v),
    );
    return out.variable.id;
  }

  // --- knowledge-base linking ---------------------------------------------------

  async loadLinkCandidates(variableId: string): Promise<LinkCandidateSet> {
    const set = await this.api.linkCandidates(this.scriptId, variableId);
    this.linkSets.set(variableId, set);
    this.emit();
    return set;
  }

  async decideLink(variableId: string, setVersion: number, qid: string | null): Promise<void> {
    const current = this.linkSets.get(variableId);
    if (!current || current.set_version !== setVersion) {
      throw new StaleSetError("link");
    }
    await this.mutate((v) => this.api.linkDecision(this.scriptId, variableId, setVersion, qid, v));
    this.linkSets.delete(variableId);
  }

  // --- recommendation review ------------------------------------------------------

  async loadRecommendations(): Promise<RecommendationBatch> {
    const batch = await this.mutate<RecommendationBatch>((v) =>
      this.api.recommendations(this.scriptId, v),
    );
    this.recommendationBatch = batch;
    this.emit();
    return batch;
  }

  async decideRecommendation(
    batchId: number,
    suggestionId: string,
    decision: "accepted" | "rejected" | "edited",
    editedText?: string,
  ): Promise<void> {
    if (!this.recommendationBatch || this.recommendationBatch.batch !== batchId) {
      throw new StaleSetError("recommendation");
    }
    await this.mutate((v) =>
      this.api.recommendationDecision(this.scriptId, suggestionId, decision, v, editedText),
    );
    const batch = this.recommendationBatch;
    const entry = batch.suggestions.find((s) => s.id === suggestionId);
    if (entry) entry.decision = decision;
    this.emit();
  }

  // --- mixed-initiative loop ---------------------------------------------------------

  async nextOptionSet(): Promise<OptionSet> {
    const set = await this.mutate<OptionSet>((v) => this.api.mixedNext(this.scriptId, v));
    this.optionSet = set;
    this.emit();
    return set;
  }

  async decideOption(
    setId: number,
    outcome: "accepted" | "edited" | "rejected_all",
    optionIndex?: number,
    editedText?: string,
    typedText?: string,
  ): Promise<void> {
    if (!this.optionSet || this.optionSet.set_id !== setId) {
      throw new StaleSetError("next-step");
    }
    await this.mutate((v) =>
      this.api.mixedDecision(this.scriptId, setId, outcome, v, optionIndex, editedText, typedText),
    );
    this.optionSet = null;
    this.emit();
  }
}
