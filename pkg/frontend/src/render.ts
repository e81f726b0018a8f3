import { writeFileSync } from "node:fs";

import { FigureKind, Table, column, readTable } from "./csv.js";
import {
  HEIGHT,
  WIDTH,
  axes,
  document,
  heatColor,
  line,
  linearScale,
  plotArea,
  polyline,
  rect,
  text,
} from "./svg.js";

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  xlabel?: string;
  ylabel?: string;
}

const extent = (values: number[]): [number, number] => [
  Math.min(...values),
  Math.max(...values),
];

function renderSurface(table: Table, xlabel: string, ylabel: string): string {
  const ta = column(table, 0);
  const tb = column(table, 1);
  const payoff = column(table, 2);
  const taValues = [...new Set(ta)].sort((a, b) => a - b);
  const tbValues = [...new Set(tb)].sort((a, b) => a - b);
  const [lo, hi] = extent(payoff);

  const xScale = linearScale(-1, 1, plotArea.x0, plotArea.x1);
  const yScale = linearScale(-1, 1, plotArea.y0, plotArea.y1);
  const cellW = (plotArea.x1 - plotArea.x0) / taValues.length;
  const cellH = (plotArea.y0 - plotArea.y1) / tbValues.length;

  const cells = table.rows.map(([a, b, value]) =>
    rect(
      xScale(a) - cellW / 2,
      yScale(b) - cellH / 2,
      cellW,
      cellH,
      heatColor((value - lo) / (hi - lo || 1)),
    ),
  );

  // color ramp legend
  const legend: string[] = [];
  const steps = 24;
  const legendX = plotArea.x1 + 24;
  for (let i = 0; i < steps; i++) {
    const t = i / (steps - 1);
    const y = plotArea.y0 - ((plotArea.y0 - plotArea.y1) * (i + 1)) / steps;
    legend.push(
      rect(legendX, y, 14, (plotArea.y0 - plotArea.y1) / steps + 0.5, heatColor(t)),
    );
  }
  legend.push(text(legendX + 18, plotArea.y0 + 3, lo.toFixed(2), { size: 10 }));
  legend.push(text(legendX + 18, plotArea.y1 + 9, hi.toFixed(2), { size: 10 }));

  return [
    cells.join("\n"),
    axes(xScale, yScale, [-1, 1], [-1, 1], xlabel, ylabel),
    legend.join("\n"),
  ].join("\n");
}

const CURVE_SERIES = [
  { index: 1, label: "cooperate", stroke: "#1b6ca8", dash: "" },
  { index: 2, label: "defect", stroke: "#2e8540", dash: "2 4" },
  { index: 3, label: "miracle", stroke: "#c0392b", dash: "8 5" },
  { index: 4, label: "opponent vs miracle", stroke: "#7d3c98", dash: "" },
];

function renderCurves(table: Table, xlabel: string, ylabel: string): string {
  const thetas = column(table, 0);
  const all = CURVE_SERIES.flatMap(({ index }) => column(table, index));
  const [xLo, xHi] = extent(thetas);
  const [yLo, yHi] = extent(all);
  const pad = 0.05 * (yHi - yLo || 1);
  const xScale = linearScale(xLo, xHi, plotArea.x0, plotArea.x1);
  const yScale = linearScale(yLo - pad, yHi + pad, plotArea.y0, plotArea.y1);

  const lines = CURVE_SERIES.map(({ index, stroke, dash }) =>
    polyline(
      table.rows.map((row) => [xScale(row[0]), yScale(row[index])]),
      stroke,
      dash,
    ),
  );
  const legend = CURVE_SERIES.map(({ label, stroke, dash }, i) => {
    const y = plotArea.y1 + 14 * i + 6;
    return (
      line(plotArea.x1 - 160, y, plotArea.x1 - 130, y, stroke, dash) +
      text(plotArea.x1 - 124, y + 4, label, { size: 11 })
    );
  });

  return [
    lines.join("\n"),
    axes(xScale, yScale, [xLo, xHi], [yLo - pad, yHi + pad], xlabel, ylabel),
    legend.join("\n"),
  ].join("\n");
}

/** First row where the recorded best strategy leaves defection (pi, 0). */
export function jumpIndex(table: Table): number {
  return table.rows.findIndex(
    (row) => Math.hypot(row[2] - Math.PI, row[3]) > 0.1,
  );
}

function renderMaximin(table: Table, xlabel: string, ylabel: string): string {
  const gammas = column(table, 0);
  const values = column(table, 1);
  const [xLo, xHi] = extent(gammas);
  const [yLo, yHi] = extent(values);
  const pad = 0.05 * (yHi - yLo || 1);
  const xScale = linearScale(xLo, xHi, plotArea.x0, plotArea.x1);
  const yScale = linearScale(yLo - pad, yHi + pad, plotArea.y0, plotArea.y1);

  const parts = [
    polyline(
      table.rows.map((row) => [xScale(row[0]), yScale(row[1])]),
      "#1b6ca8",
    ),
  ];
  const jump = jumpIndex(table);
  if (jump > 0) {
    const x = xScale(gammas[jump]);
    parts.push(line(x, plotArea.y0, x, plotArea.y1, "#c0392b", "4 4"));
    parts.push(
      text(x + 4, plotArea.y1 + 12, `gamma_th ~ ${gammas[jump].toFixed(3)}`, {
        size: 11,
      }),
    );
  }
  parts.push(axes(xScale, yScale, [xLo, xHi], [yLo - pad, yHi + pad], xlabel, ylabel));
  return parts.join("\n");
}

const DEFAULT_LABELS: Record<FigureKind, [string, string]> = {
  surface: ["t_a", "t_b"],
  curves: ["theta", "payoff"],
  maximin: ["gamma", "m"],
};

/** Render `spec.input` to an SVG file; returns the image dimensions. */
export function renderFigure(spec: FigureSpec): { width: number; height: number } {
  const table = readTable(spec.input, spec.kind);
  const [xlabel, ylabel] = [
    spec.xlabel ?? DEFAULT_LABELS[spec.kind][0],
    spec.ylabel ?? DEFAULT_LABELS[spec.kind][1],
  ];
  let body: string;
  switch (spec.kind) {
    case "surface":
      body = renderSurface(table, xlabel, ylabel);
      break;
    case "curves":
      body = renderCurves(table, xlabel, ylabel);
      break;
    case "maximin":
      body = renderMaximin(table, xlabel, ylabel);
      break;
  }
  writeFileSync(spec.output, document(body));
  return { width: WIDTH, height: HEIGHT };
}
