import { describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError, type ScriptDocument } from "../src/api.js";
import { SessionStore, StaleSetError } from "../src/state.js";

function baseDoc(version: number): ScriptDocument {
  return {
    schema_version: 1,
    code: null,
    script: {
      id: "s1", name: "test", description: "", version,
      events: [], variables: [], order: [],
    },
    type_choices: [], post_curation: [], mixed_initiative: [], link_decisions: [],
  };
}

/** ApiClient double: canned handlers, no network. */
function fakeApi(overrides: Partial<Record<keyof ApiClient, unknown>>): ApiClient {
  const api = new ApiClient("http://unused");
  let version = 1;
  api.getScript = async () => baseDoc(version);
  api.addEvent = async (_sid, _text, expected) => {
    if (expected !== version) {
      throw new ApiError(409, { code: "version_conflict", message: "stale" });
    }
    version += 1;
    return { event: { id: "e1", text: _text, event_type: null, provenance: "curator", created_at: "" }, version };
  };
  Object.assign(api, overrides);
  return api;
}

describe("SessionStore", () => {
  it("tracks the server version through mutations", async () => {
    const store = new SessionStore(fakeApi({}), "s1");
    await store.refresh();
    expect(store.version).toBe(1);
    await store.addEvent("one step");
    expect(store.version).toBe(2);
  });

  it("retries once after a version conflict when asked", async () => {
    const api = fakeApi({});
    const store = new SessionStore(api, "s1");
    await store.refresh();
    // simulate another client bumping the version behind our back
    await api.addEvent("s1", "their step", 1);
    await expect(
      store.mutate((v) => api.addEvent("s1", "mine", v), { retryOnConflict: true }),
    ).resolves.toMatchObject({ version: 3 });
  });

  it("records domain errors for screens and keeps going", async () => {
    const api = fakeApi({
      orderBefore: async () => {
        throw new ApiError(422, {
          code: "cycle",
          message: "adding e2 -> e1 closes cycle e1 -> e2 -> e1",
          details: { cycle: ["e1", "e2", "e1"] },
        });
      },
    });
    const store = new SessionStore(api, "s1");
    await store.refresh();
    await expect(store.orderBefore("e2", "e1")).rejects.toBeInstanceOf(ApiError);
    expect(store.lastError?.code).toBe("cycle");
    expect(store.lastError?.details["cycle"]).toEqual(["e1", "e2", "e1"]);
  });

  it("blocks link decisions against a superseded candidate set", async () => {
    const api = fakeApi({
      linkCandidates: async () => ({
        variable: "v1", label: "buyer", set_version: 2, candidates: [],
      }),
    });
    const store = new SessionStore(api, "s1");
    await store.refresh();
    await store.loadLinkCandidates("v1");
    await expect(store.decideLink("v1", 1, "Q830077")).rejects.toBeInstanceOf(StaleSetError);
  });

  it("blocks decisions on a stale recommendation batch", async () => {
    const store = new SessionStore(fakeApi({}), "s1");
    await store.refresh();
    store.recommendationBatch = {
      batch: 2, suggestions: [], report: { counts: {}, parse_loss: 0 }, version: 1,
    };
    await expect(
      store.decideRecommendation(1, "g1", "accepted"),
    ).rejects.toBeInstanceOf(StaleSetError);
  });

  it("marks provider outages instead of blocking event entry", async () => {
    const api = fakeApi({
      suggestTypes: async () => {
        throw new ApiError(503, { code: "provider_unavailable", message: "down" });
      },
    });
    const store = new SessionStore(api, "s1");
    await store.refresh();
    const pending = await store.loadTypeSuggestions("e1");
    expect(pending.providerDown).toBe(true);
    expect(pending.suggestions).toEqual([]);
  });
});
