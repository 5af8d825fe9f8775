/** Application wiring: config panel, board, top-K sidebar, accept/undo. */

import { ApiClient, type SessionConfig } from "./api.js";
import { renderBoard } from "./board.js";
import {
  ActionQueue,
  applyError,
  applyHeatmap,
  clearValues,
  initialState,
  type BoardViewState,
} from "./state.js";

export interface AppElements {
  svg: SVGSVGElement;
  banner: HTMLDivElement;
  sidebar: HTMLOListElement;
  sequenceLine: HTMLDivElement;
  acceptButton: HTMLButtonElement;
  undoButton: HTMLButtonElement;
  configForm: HTMLFormElement;
}

export interface App {
  state: BoardViewState;
  queue: ActionQueue;
  elements: AppElements;
  sessionId: string;
  place(field: string): Promise<void>;
  acceptTop(): Promise<void>;
  undo(): Promise<void>;
  applyConfig(config: SessionConfig): Promise<void>;
  idle(): Promise<void>;
}

const CONFIG_FIELDS: Array<[keyof SessionConfig, string, string]> = [
  ["board_size", "number", "12"],
  ["pool_size", "number", "200"],
  ["bins_k", "number", "8"],
  ["epsilon", "number", "0.01"],
  ["scoring", "text", "log"],
  ["seed", "number", "0"],
  ["general_seed", "number", "0"],
  ["general_length", "number", "1000"],
  ["freeze_model", "checkbox", ""],
];

function buildDom(root: HTMLElement): AppElements {
  root.innerHTML = "";

  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.hidden = true;
  root.appendChild(banner);

  const configForm = document.createElement("form");
  configForm.className = "config-panel";
  for (const [name, type, fallback] of CONFIG_FIELDS) {
    const label = document.createElement("label");
    label.textContent = name;
    const input = document.createElement("input");
    input.name = name;
    input.type = type;
    if (type === "number") {
      input.step = "any";
    }
    input.value = fallback;
    label.appendChild(input);
    configForm.appendChild(label);
  }
  const apply = document.createElement("button");
  apply.type = "submit";
  apply.textContent = "Apply config";
  configForm.appendChild(apply);
  root.appendChild(configForm);

  const layout = document.createElement("div");
  layout.className = "layout";
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("class", "board");
  layout.appendChild(svg);

  const side = document.createElement("div");
  side.className = "side";
  const sidebar = document.createElement("ol");
  sidebar.className = "top-list";
  side.appendChild(sidebar);

  const acceptButton = document.createElement("button");
  acceptButton.type = "button";
  acceptButton.className = "accept";
  acceptButton.textContent = "Accept suggestion";
  side.appendChild(acceptButton);

  const undoButton = document.createElement("button");
  undoButton.type = "button";
  undoButton.className = "undo";
  undoButton.textContent = "Undo";
  side.appendChild(undoButton);

  const sequenceLine = document.createElement("div");
  sequenceLine.className = "sequence";
  side.appendChild(sequenceLine);

  layout.appendChild(side);
  root.appendChild(layout);

  return { svg, banner, sidebar, sequenceLine, acceptButton, undoButton, configForm };
}

function describeError(err: unknown): string {
  if (err instanceof Error) {
    return err.message || err.name;
  }
  return String(err);
}

export async function initApp(
  root: HTMLElement,
  client: ApiClient,
  config: SessionConfig = {},
): Promise<App> {
  const elements = buildDom(root);
  const queue = new ActionQueue();
  let session = await client.createSession(config);
  const state = initialState(session.config.board_size);

  const render = (): void => {
    elements.banner.hidden = state.error === null;
    elements.banner.textContent = state.error ?? "";
    elements.sequenceLine.textContent = state.sequence.join(" ");
    elements.sidebar.innerHTML = "";
    for (const entry of state.top) {
      const li = document.createElement("li");
      li.dataset.field = entry.field;
      li.textContent = `${entry.field}  ${entry.value.toFixed(4)}`;
      elements.sidebar.appendChild(li);
    }
    elements.acceptButton.disabled = state.top.length === 0;
    elements.undoButton.disabled = state.sequence.length === 0;
    renderBoard(elements.svg, state, { onCellClick: (field) => void app.place(field) });
  };

  const syncSequence = async (positions: string[]): Promise<void> => {
    if (positions.length >= 2) {
      applyHeatmap(state, await client.setSequence(session.id, positions));
    } else {
      state.sequence = positions;
      clearValues(state);
      state.error = null;
    }
  };

  const guarded = (work: () => Promise<void>): Promise<void> =>
    queue.enqueue(async () => {
      try {
        await work();
      } catch (err) {
        applyError(state, describeError(err));
      }
      render();
    });

  const app: App = {
    state,
    queue,
    elements,
    get sessionId() {
      return session.id;
    },
    place(field: string) {
      return guarded(() => syncSequence([...state.sequence, field]));
    },
    acceptTop() {
      return guarded(async () => {
        const best = state.top[0];
        if (!best) {
          return;
        }
        applyHeatmap(state, await client.accept(session.id, best.field));
      });
    },
    undo() {
      return guarded(() => syncSequence(state.sequence.slice(0, -1)));
    },
    applyConfig(next: SessionConfig) {
      return guarded(async () => {
        const replay = [...state.sequence];
        session = await client.createSession(next);
        state.boardSize = session.config.board_size;
        await syncSequence(replay);
      });
    },
    idle() {
      return queue.idle();
    },
  };

  elements.acceptButton.addEventListener("click", () => void app.acceptTop());
  elements.undoButton.addEventListener("click", () => void app.undo());
  elements.configForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const next: SessionConfig = {};
    for (const [name, type] of CONFIG_FIELDS) {
      const input = elements.configForm.elements.namedItem(name) as HTMLInputElement;
      if (type === "checkbox") {
        (next as Record<string, unknown>)[name] = input.checked;
      } else if (type === "number") {
        (next as Record<string, unknown>)[name] = Number(input.value);
      } else {
        (next as Record<string, unknown>)[name] = input.value;
      }
    }
    void app.applyConfig(next);
  });

  render();
  return app;
}
