/**
 * App shell: pick or create a script, then move between the curation
 * screens. The service base URL defaults to same-origin `/api` and can be
 * overridden with `?api=http://127.0.0.1:8400`.
 */

import { ApiClient } from "./api.js";
import { SessionStore } from "./state.js";
import { EventEntryScreen } from "./screens/eventEntry.js";
import { OrderingScreen } from "./screens/ordering.js";
import {
  LinkReviewScreen,
  MixedInitiativeScreen,
  RecommendationReviewScreen,
} from "./screens/review.js";

const SCREENS = [
  ["events", "1 — Events & types"],
  ["ordering", "2 — Order & arguments"],
  ["links", "3 — Links"],
  ["recommendations", "4 — Recommendations"],
  ["mixed", "5 — Mixed-initiative"],
] as const;

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "/api");
  const app = document.getElementById("app")!;

  const ontology = await api.ontology();
  const scripts = await api.listScripts();

  const chooser = document.createElement("div");
  chooser.className = "chooser";
  const select = document.createElement("select");
  for (const s of scripts) {
    const option = document.createElement("option");
    option.value = s.id;
    option.textContent = `${s.name} (v${s.version})`;
    select.append(option);
  }
  const open = document.createElement("button");
  open.textContent = "Open";
  const name = document.createElement("input");
  name.placeholder = "new script name";
  const description = document.createElement("input");
  description.placeholder = "description";
  const create = document.createElement("button");
  create.textContent = "Create";
  chooser.append(select, open, name, description, create);
  app.append(chooser);

  const screenRoot = document.createElement("div");
  screenRoot.id = "screen";
  app.append(screenRoot);

  async function openScript(sid: string): Promise<void> {
    const store = new SessionStore(api, sid);
    await store.refresh();

    const nav = document.createElement("nav");
    const body = document.createElement("div");
    screenRoot.textContent = "";
    screenRoot.append(nav, body);

    const screens = {
      events: new EventEntryScreen(store, ontology),
      ordering: new OrderingScreen(store, ontology),
      links: new LinkReviewScreen(store),
      recommendations: new RecommendationReviewScreen(store),
      mixed: new MixedInitiativeScreen(store),
    };
    for (const [key, label] of SCREENS) {
      const tab = document.createElement("button");
      tab.textContent = label;
      tab.addEventListener("click", () => {
        body.textContent = "";
        screens[key].mount(body);
      });
      nav.append(tab);
    }
    screens.events.mount(body);
  }

  open.addEventListener("click", () => void openScript(select.value));
  create.addEventListener("click", () => {
    void api
      .createScript(name.value, description.value)
      .then((summary) => openScript(summary.id));
  });
}

void boot();
