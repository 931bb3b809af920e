/**
 * Typed client for the curation service API.
 *
 * Every mutation carries the caller's expected script version; the server
 * answers 409 version_conflict on stale writes and 409 stale_candidate on
 * decisions about superseded suggestion sets. Domain failures surface as
 * ApiError with the server's structured payload — the UI renders those
 * messages verbatim and performs no domain validation of its own.
 */

export interface ErrorPayload {
  code: string;
  message: string;
  details?: Record<string, unknown>;
}

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: Record<string, unknown>;

  constructor(status: number, payload: ErrorPayload) {
    super(payload.message);
    this.status = status;
    this.code = payload.code;
    this.details = payload.details ?? {};
  }
}

export interface EventOut {
  id: string;
  text: string;
  event_type: string | null;
  provenance: "curator" | "machine_accepted" | "machine_edited";
  created_at: string;
}

export interface VariableOut {
  id: string;
  label: string;
  entity_type: string;
  kb_link: string | null;
  participations: [string, string][];
}

export interface ScriptDocument {
  schema_version: number;
  code: string | null;
  script: {
    id: string;
    name: string;
    description: string;
    version: number;
    events: EventOut[];
    variables: VariableOut[];
    order: { before: string; after: string }[];
  };
  type_choices: unknown[];
  post_curation: { decision: string }[];
  mixed_initiative: unknown[];
  link_decisions: unknown[];
}

export interface ScriptSummary {
  id: string;
  name: string;
  description: string;
  version: number;
  events: number;
  variables: number;
}

export interface TypeSuggestion {
  type_id: string;
  score: number;
  rank: number;
}

export interface LinkCandidate {
  qid: string;
  label: string;
  description: string;
  retrieval_score: number;
  rerank_score: number;
  rank: number;
}

export interface LinkCandidateSet {
  variable: string;
  label: string;
  set_version: number;
  candidates: LinkCandidate[];
}

export interface Suggestion {
  id: string;
  text: string;
  source: string;
  decision: string;
  edited_text: string | null;
}

export interface RecommendationBatch {
  batch: number;
  suggestions: Suggestion[];
  report: { counts: Record<string, number>; parse_loss: number };
  version: number;
}

export interface OptionSet {
  set_id: number;
  options: Suggestion[];
  version: number;
}

export interface GraphDoc {
  script: string;
  name: string;
  nodes: {
    id: string;
    label: string;
    text: string;
    event_type: string | null;
    args: { variable: string; label: string; role: string }[];
  }[];
  edges: { before: string; after: string }[];
  unordered: [string, string][];
}

export interface OntologyDoc {
  version: string;
  entity_types: { id: string; name: string }[];
  event_types: {
    id: string;
    name: string;
    definition: string;
    roles: { name: string; entity_types: string[] }[];
  }[];
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let payload: ErrorPayload = { code: "http_error", message: `HTTP ${response.status}` };
    try {
      const body = (await response.json()) as { error?: ErrorPayload };
      if (body.error) payload = body.error;
    } catch {
      // non-JSON error body; keep the generic payload
    }
    throw new ApiError(response.status, payload);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return request<T>(this.url(path), { method: "POST", body: JSON.stringify(body) });
  }

  private get<T>(path: string): Promise<T> {
    return request<T>(this.url(path));
  }

  health(): Promise<{ status: string; provider: string }> {
    return this.get("/healthz");
  }

  ontology(): Promise<OntologyDoc> {
    return this.get("/ontology");
  }

  createScript(name: string, description: string): Promise<ScriptSummary> {
    return this.post("/scripts", { name, description });
  }

  listScripts(): Promise<ScriptSummary[]> {
    return this.get("/scripts");
  }

  getScript(sid: string): Promise<ScriptDocument> {
    return this.get(`/scripts/${sid}`);
  }

  validate(sid: string): Promise<{ valid: boolean; violations: string[] }> {
    return this.get(`/scripts/${sid}/validate`);
  }

  addEvent(sid: string, text: string, expectedVersion: number, eventType?: string) {
    return this.post<{ event: EventOut; version: number }>(`/scripts/${sid}/events`, {
      text,
      event_type: eventType ?? null,
      expected_version: expectedVersion,
    });
  }

  removeEvent(sid: string, eid: string, expectedVersion: number) {
    return this.post<{ version: number }>(`/scripts/${sid}/events/${eid}/remove`, {
      expected_version: expectedVersion,
    });
  }

  suggestTypes(sid: string, eid: string, k = 3) {
    return this.get<{ event: string; suggestions: TypeSuggestion[] }>(
      `/scripts/${sid}/events/${eid}/suggest-types?k=${k}`,
    );
  }

  assignType(
    sid: string,
    eid: string,
    typeId: string | null,
    expectedVersion: number,
    shown?: TypeSuggestion[],
  ) {
    return this.post<{ event: EventOut; version: number }>(`/scripts/${sid}/events/${eid}/type`, {
      type_id: typeId,
      expected_version: expectedVersion,
      suggestions: shown ?? null,
    });
  }

  orderBefore(sid: string, before: string, after: string, expectedVersion: number) {
    return this.post<{ version: number }>(`/scripts/${sid}/order/before`, {
      before,
      after,
      expected_version: expectedVersion,
    });
  }

  anchor(
    sid: string,
    selected: string[],
    pivot: string,
    direction: "before" | "after",
    expectedVersion: number,
  ) {
    return this.post<{ added: { before: string; after: string }[]; version: number }>(
      `/scripts/${sid}/order/anchor`,
      { selected, pivot, direction, expected_version: expectedVersion },
    );
  }

  graph(sid: string): Promise<GraphDoc> {
    return this.get(`/scripts/${sid}/graph`);
  }

  createVariable(
    sid: string,
    label: string,
    entityType: string,
    bindings: { event_id: string; role: string }[],
    expectedVersion: number,
  ) {
    return this.post<{ variable: VariableOut; version: number }>(`/scripts/${sid}/variables`, {
      label,
      entity_type: entityType,
      bindings,
      expected_version: expectedVersion,
    });
  }

  linkCandidates(sid: string, vid: string): Promise<LinkCandidateSet> {
    return this.post(`/scripts/${sid}/variables/${vid}/link-candidates`, {});
  }

  linkDecision(sid: string, vid: string, setVersion: number, qid: string | null, expectedVersion: number) {
    return this.post<{ qid: string | null; version: number }>(
      `/scripts/${sid}/variables/${vid}/link-decision`,
      { set_version: setVersion, qid, expected_version: expectedVersion },
    );
  }

  recommendations(sid: string, expectedVersion: number): Promise<RecommendationBatch> {
    return this.post(`/scripts/${sid}/recommendations`, { expected_version: expectedVersion });
  }

  recommendationDecision(
    sid: string,
    suggestionId: string,
    decision: "accepted" | "rejected" | "edited",
    expectedVersion: number,
    editedText?: string,
  ) {
    return this.post<{ event: EventOut | null; version: number }>(
      `/scripts/${sid}/recommendations/${suggestionId}/decision`,
      { decision, edited_text: editedText ?? null, expected_version: expectedVersion },
    );
  }

  mixedNext(sid: string, expectedVersion: number): Promise<OptionSet> {
    return this.post(`/scripts/${sid}/mixed-initiative/next`, { expected_version: expectedVersion });
  }

  mixedDecision(
    sid: string,
    setId: number,
    outcome: "accepted" | "edited" | "rejected_all",
    expectedVersion: number,
    optionIndex?: number,
    editedText?: string,
    typedText?: string,
  ) {
    return this.post<{ event: EventOut | null; version: number }>(
      `/scripts/${sid}/mixed-initiative/decision`,
      {
        set_id: setId,
        outcome,
        option_index: optionIndex ?? null,
        edited_text: editedText ?? null,
        typed_text: typedText ?? null,
        expected_version: expectedVersion,
      },
    );
  }
}
