import { isFigureKind } from "./csv.js";
import { FigureSpec, renderFigure } from "./render.js";

const USAGE =
  "usage: render --kind surface|curves|maximin --in data.csv --out figure.svg " +
  "[--xlabel TEXT] [--ylabel TEXT]";

export function parseArgs(argv: string[]): FigureSpec {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(USAGE);
    }
    flags.set(key.slice(2), value);
  }
  const kind = flags.get("kind") ?? "";
  const input = flags.get("in");
  const output = flags.get("out");
  if (!isFigureKind(kind) || !input || !output) {
    throw new Error(USAGE);
  }
  return {
    kind,
    input,
    output,
    xlabel: flags.get("xlabel"),
    ylabel: flags.get("ylabel"),
  };
}

export function main(argv: string[]): number {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const { width, height } = renderFigure(spec);
    console.log(`wrote ${spec.output} (${width}x${height})`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}
