/** SVG board rendering: value heatmap, rank-1 highlight, click-to-place. */

import type { BoardViewState } from "./state.js";

export const CELL = 36;
export const MARGIN = 24;

/**
 * Normalizes a value into [0, 1] against the current response's min..max.
 * A degenerate range maps everything to 0.5.
 */
export function normalize(value: number, min: number, max: number): number {
  if (max <= min) {
    return 0.5;
  }
  return (value - min) / (max - min);
}

/** Cold-to-warm color for a normalized value. */
export function colorFor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const hue = 240 - 240 * clamped; // blue (low) to red (high)
  return `hsl(${hue.toFixed(1)}, 80%, 55%)`;
}

export function columnLabel(col: number): string {
  let label = "";
  let c = col;
  do {
    label = String.fromCharCode(65 + (c % 26)) + label;
    c = Math.floor(c / 26) - 1;
  } while (c >= 0);
  return label;
}

export function fieldName(col: number, row: number): string {
  return `${columnLabel(col)}${row + 1}`;
}

export interface BoardCallbacks {
  onCellClick: (field: string) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

/** Redraws the whole board into `svg` from the given state. */
export function renderBoard(
  svg: SVGSVGElement,
  state: BoardViewState,
  callbacks: BoardCallbacks,
): void {
  const n = state.boardSize;
  const side = n * CELL + MARGIN;
  svg.setAttribute("viewBox", `0 0 ${side} ${side}`);
  svg.setAttribute("width", String(side));
  svg.setAttribute("height", String(side));
  while (svg.firstChild) {
    svg.removeChild(svg.firstChild);
  }

  const values = state.cells.map((c) => c.value);
  const min = values.length ? Math.min(...values) : 0;
  const max = values.length ? Math.max(...values) : 0;
  const byField = new Map(state.cells.map((c) => [c.field, c]));
  const placed = new Map(state.sequence.map((f, i) => [f, i]));

  for (let col = 0; col < n; col += 1) {
    for (let row = 0; row < n; row += 1) {
      const field = fieldName(col, row);
      const cell = byField.get(field);
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(MARGIN + col * CELL));
      rect.setAttribute("y", String((n - 1 - row) * CELL));
      rect.setAttribute("width", String(CELL - 1));
      rect.setAttribute("height", String(CELL - 1));
      rect.setAttribute("data-field", field);
      rect.setAttribute("data-rank", cell ? String(cell.rank) : "");
      rect.setAttribute("fill", cell ? colorFor(normalize(cell.value, min, max)) : "#e8e8e8");
      if (cell?.rank === 1) {
        rect.setAttribute("class", "cell rank-1");
        rect.setAttribute("stroke", "#000");
        rect.setAttribute("stroke-width", "3");
      } else {
        rect.setAttribute("class", "cell");
        rect.setAttribute("stroke", "#fff");
        rect.setAttribute("stroke-width", "1");
      }
      rect.addEventListener("click", () => callbacks.onCellClick(field));
      svg.appendChild(rect);

      const seqIndex = placed.get(field);
      if (seqIndex !== undefined) {
        const marker = document.createElementNS(SVG_NS, "text");
        marker.setAttribute("x", String(MARGIN + col * CELL + CELL / 2));
        marker.setAttribute("y", String((n - 1 - row) * CELL + CELL / 2 + 5));
        marker.setAttribute("text-anchor", "middle");
        marker.setAttribute("class", "placed");
        marker.setAttribute("data-field", field);
        marker.textContent = String(seqIndex);
        svg.appendChild(marker);
      }
    }
  }

  for (let col = 0; col < n; col += 1) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(MARGIN + col * CELL + CELL / 2));
    label.setAttribute("y", String(n * CELL + 16));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "axis");
    label.textContent = columnLabel(col);
    svg.appendChild(label);
  }
  for (let row = 0; row < n; row += 1) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(MARGIN - 6));
    label.setAttribute("y", String((n - 1 - row) * CELL + CELL / 2 + 5));
    label.setAttribute("text-anchor", "end");
    label.setAttribute("class", "axis");
    label.textContent = String(row + 1);
    svg.appendChild(label);
  }
}
