export { HEADERS, isFigureKind, readTable, column } from "./csv.js";
export type { FigureKind, Table } from "./csv.js";
export { renderFigure, jumpIndex } from "./render.js";
export type { FigureSpec } from "./render.js";
