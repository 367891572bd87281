import { readFileSync } from "fs";

export const CSV_HEADER = "t,x,side,A,u,w,Q_net,Q_gross,p,A_gross";

const COLUMNS = CSV_HEADER.split(",");

export interface Snapshot {
  /** Source file, kept for labels and error messages. */
  path: string;
  t: number;
  x: number[];
  side: string[];
  A: number[];
  u: number[];
  /** NaN on the free segment, where no device is present. */
  w: number[];
  Q_net: number[];
  Q_gross: number[];
  p: number[];
  A_gross: number[];
}

export class SchemaError extends Error {
  constructor(path: string, line: number, detail: string) {
    super(`${path}:${line}: ${detail}`);
    this.name = "SchemaError";
  }
}

function parseNumber(
  raw: string,
  column: string,
  path: string,
  line: number
): number {
  if (raw === "") {
    // only the device velocity may be blank (free segment)
    if (column === "w") return NaN;
    throw new SchemaError(path, line, `empty value in column '${column}'`);
  }
  const value = Number(raw);
  if (Number.isNaN(value)) {
    throw new SchemaError(
      path,
      line,
      `column '${column}' is not numeric: '${raw}'`
    );
  }
  return value;
}

/** Parse one snapshot CSV emitted by the simulation CLI. */
export function readSnapshot(path: string): Snapshot {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(path, 1, "file is empty");
  }
  if (lines[0] !== CSV_HEADER) {
    throw new SchemaError(
      path,
      1,
      `unexpected header '${lines[0]}' (want '${CSV_HEADER}')`
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(path, 2, "no data rows");
  }

  const snap: Snapshot = {
    path,
    t: 0,
    x: [],
    side: [],
    A: [],
    u: [],
    w: [],
    Q_net: [],
    Q_gross: [],
    p: [],
    A_gross: [],
  };
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    const lineNo = i + 1;
    if (cells.length !== COLUMNS.length) {
      throw new SchemaError(
        path,
        lineNo,
        `expected ${COLUMNS.length} columns, got ${cells.length}`
      );
    }
    const t = parseNumber(cells[0], "t", path, lineNo);
    if (i === 1) {
      snap.t = t;
    } else if (t !== snap.t) {
      throw new SchemaError(
        path,
        lineNo,
        `inconsistent time ${t} (first row has ${snap.t})`
      );
    }
    const side = cells[2];
    if (side !== "catheterized" && side !== "free") {
      throw new SchemaError(path, lineNo, `unknown side '${side}'`);
    }
    snap.x.push(parseNumber(cells[1], "x", path, lineNo));
    snap.side.push(side);
    snap.A.push(parseNumber(cells[3], "A", path, lineNo));
    snap.u.push(parseNumber(cells[4], "u", path, lineNo));
    snap.w.push(parseNumber(cells[5], "w", path, lineNo));
    snap.Q_net.push(parseNumber(cells[6], "Q_net", path, lineNo));
    snap.Q_gross.push(parseNumber(cells[7], "Q_gross", path, lineNo));
    snap.p.push(parseNumber(cells[8], "p", path, lineNo));
    snap.A_gross.push(parseNumber(cells[9], "A_gross", path, lineNo));
  }
  return snap;
}

export interface Manifest {
  snapshots: { t: number; file: string }[];
  config: Record<string, unknown>;
}

export function readManifest(path: string): Manifest {
  const raw = JSON.parse(readFileSync(path, "utf8"));
  if (!Array.isArray(raw.snapshots)) {
    throw new Error(`${path}: manifest has no snapshot list`);
  }
  return raw as Manifest;
}
