import type { EChartsOption, SeriesOption } from "echarts";
import type { Snapshot } from "./csv.js";

/** One run is an ordered list of snapshots (one per time instance). */
export interface RunData {
  label: string;
  snapshots: Snapshot[];
}

export interface FigureSpec {
  kind: "profiles" | "spacetime";
  runs: RunData[];
  /** Draw gross quantities (including the device) as red overlays. */
  gross?: boolean;
  title?: string;
}

/** Line styles distinguishing runs, per the figure captions. */
const RUN_STYLES: Array<"solid" | "dashed" | "dotted"> = [
  "solid",
  "dashed",
  "dotted",
];

const PROFILE_ROWS = [
  { field: "Q_net", grossField: "Q_gross", name: "flow rate Q" },
  { field: "p", grossField: null, name: "pressure p" },
  { field: "A", grossField: "A_gross", name: "section area A" },
] as const;

export function runStyle(index: number): "solid" | "dashed" | "dotted" {
  return RUN_STYLES[index % RUN_STYLES.length];
}

function profileSeries(
  snap: Snapshot,
  field: "Q_net" | "Q_gross" | "p" | "A" | "A_gross",
  name: string,
  gridIndex: number,
  style: "solid" | "dashed" | "dotted",
  color?: string
): SeriesOption {
  const values = snap[field];
  return {
    type: "line",
    name,
    xAxisIndex: gridIndex,
    yAxisIndex: gridIndex,
    showSymbol: false,
    lineStyle: { type: style, ...(color ? { color } : {}) },
    ...(color ? { itemStyle: { color } } : {}),
    data: snap.x.map((x, i) => [x, values[i]]),
  };
}

/**
 * Three stacked rows (Q, p, A over x); snapshots of each run are overlaid,
 * runs are told apart by line style, gross quantities appear in red.
 */
export function profilesOption(spec: FigureSpec): EChartsOption {
  const series: SeriesOption[] = [];
  for (let row = 0; row < PROFILE_ROWS.length; row++) {
    const { field, grossField } = PROFILE_ROWS[row];
    spec.runs.forEach((run, runIdx) => {
      const style = runStyle(runIdx);
      for (const snap of run.snapshots) {
        const label = `${run.label} t=${(snap.t * 1e3).toPrecision(3)} ms`;
        series.push(profileSeries(snap, field, label, row, style));
        if (spec.gross && grossField) {
          series.push(
            profileSeries(
              snap,
              grossField,
              `${label} (gross)`,
              row,
              style,
              "red"
            )
          );
        }
      }
    });
  }
  return {
    title: spec.title ? { text: spec.title } : undefined,
    animation: false,
    grid: PROFILE_ROWS.map((_, row) => ({
      left: 60,
      right: 20,
      top: 40 + row * 180,
      height: 140,
    })),
    xAxis: PROFILE_ROWS.map((_, row) => ({
      type: "value",
      gridIndex: row,
      name: row === PROFILE_ROWS.length - 1 ? "x (cm)" : "",
    })),
    yAxis: PROFILE_ROWS.map((rowDef, row) => ({
      type: "value",
      gridIndex: row,
      name: rowDef.name,
      scale: true,
    })),
    series,
  };
}

const SPACETIME_FIELDS = [
  { field: "Q_net", name: "flow rate Q" },
  { field: "p", name: "pressure p" },
] as const;

function heatmapData(
  run: RunData,
  field: "Q_net" | "p"
): Array<[number, number, number]> {
  const data: Array<[number, number, number]> = [];
  run.snapshots.forEach((snap, ti) => {
    const values = snap[field];
    snap.x.forEach((_, xi) => {
      data.push([xi, ti, values[xi]]);
    });
  });
  return data;
}

/**
 * Space-time heat maps of Q and p; runs are laid out side by side
 * (columns), the two fields stacked (rows).
 */
export function spacetimeOption(spec: FigureSpec): EChartsOption {
  const nCols = spec.runs.length;
  const grids: EChartsOption["grid"] = [];
  const xAxes: unknown[] = [];
  const yAxes: unknown[] = [];
  const series: SeriesOption[] = [];
  let extent = 0;

  for (let row = 0; row < SPACETIME_FIELDS.length; row++) {
    const { field, name } = SPACETIME_FIELDS[row];
    spec.runs.forEach((run, col) => {
      const gridIndex = row * nCols + col;
      const width = Math.floor(680 / nCols);
      (grids as object[]).push({
        left: 70 + col * (width + 40),
        top: 50 + row * 220,
        width,
        height: 170,
      });
      const xs = run.snapshots[0].x;
      const ts = run.snapshots.map((s) => s.t);
      xAxes.push({
        type: "category",
        gridIndex,
        data: xs.map((x) => x.toPrecision(6)),
        name: "x (cm)",
      });
      yAxes.push({
        type: "category",
        gridIndex,
        data: ts.map((t) => t.toPrecision(6)),
        name: "t (s)",
      });
      const data = heatmapData(run, field);
      for (const [, , v] of data) {
        extent = Math.max(extent, Math.abs(v));
      }
      series.push({
        type: "heatmap",
        name: `${run.label}: ${name}`,
        xAxisIndex: gridIndex,
        yAxisIndex: gridIndex,
        data,
      });
    });
  }

  return {
    title: spec.title ? { text: spec.title } : undefined,
    animation: false,
    grid: grids,
    xAxis: xAxes as EChartsOption["xAxis"],
    yAxis: yAxes as EChartsOption["yAxis"],
    visualMap: {
      min: -extent,
      max: extent,
      calculable: true,
      orient: "vertical",
      right: 0,
      top: "middle",
      inRange: {
        color: ["#313695", "#74add1", "#ffffff", "#f46d43", "#a50026"],
      },
    },
    series,
  };
}

export function buildOption(spec: FigureSpec): EChartsOption {
  if (spec.runs.length === 0) {
    throw new Error("figure spec needs at least one run");
  }
  for (const run of spec.runs) {
    if (run.snapshots.length === 0) {
      throw new Error(`run '${run.label}' has no snapshots`);
    }
    const n = run.snapshots[0].x.length;
    for (const snap of run.snapshots) {
      if (snap.x.length !== n) {
        throw new Error(
          `run '${run.label}': snapshots disagree on grid size ` +
            `(${snap.x.length} vs ${n})`
        );
      }
    }
  }
  return spec.kind === "profiles" ? profilesOption(spec) : spacetimeOption(spec);
}
