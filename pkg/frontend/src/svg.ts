/** Minimal SVG assembly: fixed canvas, linear scales, no DOM needed. */

export const WIDTH = 640;
export const HEIGHT = 480;
export const MARGIN = { top: 32, right: 96, bottom: 48, left: 64 };

export const plotArea = {
  x0: MARGIN.left,
  x1: WIDTH - MARGIN.right,
  y0: HEIGHT - MARGIN.bottom,
  y1: MARGIN.top,
};

export type Scale = (value: number) => number;

export const linearScale = (d0: number, d1: number, r0: number, r1: number): Scale => {
  const span = d1 - d0 || 1;
  return (value) => r0 + ((value - d0) * (r1 - r0)) / span;
};

const fmt = (value: number) => value.toFixed(2);

export const rect = (x: number, y: number, w: number, h: number, fill: string) =>
  `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`;

export const line = (
  x1: number, y1: number, x2: number, y2: number, stroke: string, dash = "",
) =>
  `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
  `stroke="${stroke}" stroke-width="1"${dash ? ` stroke-dasharray="${dash}"` : ""}/>`;

export const polyline = (
  points: Array<[number, number]>, stroke: string, dash = "", width = 2,
) =>
  `<polyline fill="none" stroke="${stroke}" stroke-width="${width}"` +
  `${dash ? ` stroke-dasharray="${dash}"` : ""} points="` +
  points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ") +
  `"/>`;

export const text = (
  x: number, y: number, content: string,
  opts: { anchor?: string; size?: number; rotate?: boolean } = {},
) => {
  const { anchor = "start", size = 12, rotate = false } = opts;
  const transform = rotate ? ` transform="rotate(-90 ${fmt(x)} ${fmt(y)})"` : "";
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" font-family="sans-serif" ` +
    `font-size="${size}" text-anchor="${anchor}"${transform}>${content}</text>`
  );
};

/** Cold-to-hot ramp for normalized values in [0, 1]. */
export const heatColor = (t: number) => {
  const clamped = Math.max(0, Math.min(1, t));
  return `hsl(${Math.round(240 * (1 - clamped))},70%,50%)`;
};

export function axes(
  xScale: Scale, yScale: Scale,
  xDomain: [number, number], yDomain: [number, number],
  xlabel: string, ylabel: string,
  ticks = 5,
): string {
  const parts: string[] = [];
  parts.push(line(plotArea.x0, plotArea.y0, plotArea.x1, plotArea.y0, "#333"));
  parts.push(line(plotArea.x0, plotArea.y0, plotArea.x0, plotArea.y1, "#333"));
  for (let i = 0; i <= ticks; i++) {
    const xv = xDomain[0] + ((xDomain[1] - xDomain[0]) * i) / ticks;
    const yv = yDomain[0] + ((yDomain[1] - yDomain[0]) * i) / ticks;
    parts.push(line(xScale(xv), plotArea.y0, xScale(xv), plotArea.y0 + 4, "#333"));
    parts.push(
      text(xScale(xv), plotArea.y0 + 18, xv.toFixed(2), { anchor: "middle", size: 10 }),
    );
    parts.push(line(plotArea.x0 - 4, yScale(yv), plotArea.x0, yScale(yv), "#333"));
    parts.push(
      text(plotArea.x0 - 8, yScale(yv) + 3, yv.toFixed(2), { anchor: "end", size: 10 }),
    );
  }
  const xMid = (plotArea.x0 + plotArea.x1) / 2;
  const yMid = (plotArea.y0 + plotArea.y1) / 2;
  parts.push(text(xMid, HEIGHT - 10, xlabel, { anchor: "middle" }));
  parts.push(text(18, yMid, ylabel, { anchor: "middle", rotate: true }));
  return parts.join("\n");
}

export const document = (body: string) =>
  `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
  `viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
  `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
  body +
  `\n</svg>\n`;
