import { readFileSync, readdirSync } from "fs";
import { basename, dirname, join, resolve } from "path";
import { readSnapshot, SchemaError } from "./csv.js";
import type { FigureSpec, RunData } from "./figures.js";
import { renderToFile } from "./render.js";

interface JsonRun {
  label?: string;
  csvs: string[];
}

interface JsonSpec {
  kind: "profiles" | "spacetime";
  out: string;
  gross?: boolean;
  title?: string;
  runs: JsonRun[];
}

/** Expand a '*' pattern in the basename against the containing directory. */
function expand(pattern: string): string[] {
  if (!pattern.includes("*")) return [pattern];
  const dir = dirname(pattern);
  const base = basename(pattern);
  const regex = new RegExp(
    "^" + base.split("*").map(escapeRegex).join(".*") + "$"
  );
  return readdirSync(dir)
    .filter((f) => regex.test(f))
    .sort()
    .map((f) => join(dir, f));
}

function escapeRegex(s: string): string {
  return s.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}

function loadRun(label: string, patterns: string[], baseDir: string): RunData {
  const paths = patterns.flatMap((p) => expand(resolve(baseDir, p)));
  if (paths.length === 0) {
    throw new Error(`run '${label}': no CSV files match ${patterns}`);
  }
  const snapshots = paths.map(readSnapshot);
  snapshots.sort((a, b) => a.t - b.t);
  return { label, snapshots };
}

function specFromFile(path: string): { spec: FigureSpec; out: string } {
  const raw = JSON.parse(readFileSync(path, "utf8")) as JsonSpec;
  if (raw.kind !== "profiles" && raw.kind !== "spacetime") {
    throw new Error(`${path}: kind must be 'profiles' or 'spacetime'`);
  }
  if (!raw.out) throw new Error(`${path}: missing 'out'`);
  if (!Array.isArray(raw.runs) || raw.runs.length === 0) {
    throw new Error(`${path}: 'runs' must be a non-empty list`);
  }
  const baseDir = dirname(resolve(path));
  const runs = raw.runs.map((r, i) =>
    loadRun(r.label ?? `run ${i + 1}`, r.csvs, baseDir)
  );
  return {
    spec: { kind: raw.kind, runs, gross: raw.gross ?? true, title: raw.title },
    out: resolve(baseDir, raw.out),
  };
}

function usage(): string {
  return [
    "usage: render --spec <spec.json>",
    "       render <csv...> --kind profiles|spacetime --out <file.svg>",
  ].join("\n");
}

export function main(argv: string[]): number {
  const args = [...argv];
  if (args[0] === "render") args.shift();

  const positional: string[] = [];
  let specPath: string | undefined;
  let kind: string | undefined;
  let out: string | undefined;
  while (args.length > 0) {
    const arg = args.shift() as string;
    if (arg === "--spec") specPath = args.shift();
    else if (arg === "--kind") kind = args.shift();
    else if (arg === "--out") out = args.shift();
    else if (arg === "--help" || arg === "-h") {
      console.log(usage());
      return 0;
    } else positional.push(arg);
  }

  try {
    if (specPath !== undefined) {
      const { spec, out: outPath } = specFromFile(specPath);
      renderToFile(spec, outPath);
      console.log(`wrote ${outPath}`);
      return 0;
    }
    if (positional.length === 0 || !out || !kind) {
      console.error(usage());
      return 2;
    }
    if (kind !== "profiles" && kind !== "spacetime") {
      console.error(`unknown kind '${kind}'\n` + usage());
      return 2;
    }
    const run = loadRun("run 1", positional, process.cwd());
    const spec: FigureSpec = { kind, runs: [run], gross: true };
    renderToFile(spec, resolve(out));
    console.log(`wrote ${resolve(out)}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  resolve(process.argv[1]) === new URL(import.meta.url).pathname;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
