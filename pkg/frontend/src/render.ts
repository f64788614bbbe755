/** Server-side SVG rendering: read a sweep CSV, emit one vector image. */

import fs from "node:fs";
import * as echarts from "echarts";
import type { EChartsOption } from "echarts";
import { readSweepCsv } from "./csv.js";
import { buildFigure, FigureId } from "./figures.js";

export function renderSvg(option: EChartsOption, width = 840, height = 560): string {
  const chart = echarts.init(null, null, { renderer: "svg", ssr: true, width, height });
  try {
    chart.setOption(option);
    // the renderer brands CSS class names with process-wide counters; rename
    // them by order of first appearance so repeated renders are byte-identical
    const svg = chart.renderToSVGString().replace(/zr\d+-/g, "zr-");
    const renames = new Map<string, string>();
    return svg.replace(/zr-cls-\d+/g, (token) => {
      if (!renames.has(token)) {
        renames.set(token, `zr-cls-${renames.size}`);
      }
      return renames.get(token)!;
    });
  } finally {
    chart.dispose();
  }
}

export function renderFigureFile(id: FigureId, inputCsv: string, outputSvg: string): void {
  const file = readSweepCsv(inputCsv);
  const svg = renderSvg(buildFigure(id, file));
  fs.writeFileSync(outputSvg, svg, "utf8");
}
