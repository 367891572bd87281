import { writeFileSync } from "fs";
import * as echarts from "echarts";
import type { FigureSpec } from "./figures.js";
import { buildOption } from "./figures.js";

export const WIDTH = 900;
export const HEIGHT = 640;

/** Render a figure spec to an SVG string via server-side rendering. */
export function renderSvg(spec: FigureSpec): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: WIDTH,
    height: HEIGHT,
  });
  try {
    chart.setOption(buildOption(spec));
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}

export function renderToFile(spec: FigureSpec, outPath: string): void {
  writeFileSync(outPath, renderSvg(spec));
}
