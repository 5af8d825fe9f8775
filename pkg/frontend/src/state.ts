/** View state and the single-in-flight FIFO action queue. */

import type { Heatmap, HeatmapCell, TopEntry } from "./api.js";

/**
 * Serializes user actions: tasks run strictly in enqueue order and at most
 * one request is in flight at any time.
 */
export class ActionQueue {
  private tail: Promise<void> = Promise.resolve();
  private pendingCount = 0;
  private running = false;

  get pending(): number {
    return this.pendingCount;
  }

  get inFlight(): boolean {
    return this.running;
  }

  enqueue(task: () => Promise<void>): Promise<void> {
    this.pendingCount += 1;
    const result = this.tail.then(async () => {
      this.running = true;
      try {
        await task();
      } finally {
        this.running = false;
        this.pendingCount -= 1;
      }
    });
    // keep the chain alive even when a task rejects
    this.tail = result.catch(() => undefined);
    return result;
  }

  /** Resolves once everything enqueued so far has settled. */
  idle(): Promise<void> {
    return this.tail;
  }
}

export interface BoardViewState {
  sequence: string[];
  cells: HeatmapCell[];
  top: TopEntry[];
  boardSize: number;
  error: string | null;
}

export function initialState(boardSize: number): BoardViewState {
  return { sequence: [], cells: [], top: [], boardSize, error: null };
}

/** Applies a heatmap response; clears any error banner. */
export function applyHeatmap(state: BoardViewState, heatmap: Heatmap): void {
  state.sequence = [...heatmap.sequence];
  state.cells = heatmap.cells;
  state.top = heatmap.top;
  state.boardSize = heatmap.board_size;
  state.error = null;
}

/** Records a failure; placed positions and the last heatmap stay intact. */
export function applyError(state: BoardViewState, message: string): void {
  state.error = message;
}

export function clearValues(state: BoardViewState): void {
  state.cells = [];
  state.top = [];
}
