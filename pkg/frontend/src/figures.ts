/**
 * Chart builders for the three standard figures.
 *
 * fig2  sum rate vs transmit power: dashed Monte-Carlo series next to solid
 *       closed-form series, one pair per antenna count;
 * fig3  sum rate vs antenna count under the two power-scaling regimes, each
 *       with its horizontal asymptote line;
 * fig4  one-bit vs conventional sum rate with the target crossing annotated.
 */

import type { EChartsOption, SeriesOption } from "echarts";
import { SchemaError, SweepFile, SweepRow } from "./csv.js";

export type FigureId = "fig2" | "fig3" | "fig4";

export const FIGURE_IDS: FigureId[] = ["fig2", "fig3", "fig4"];

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function points(rows: SweepRow[], x: keyof SweepRow, y: keyof SweepRow): [number, number][] {
  return rows
    .filter((r) => r[y] !== null)
    .map((r) => [r[x] as number, r[y] as number]);
}

function requireRows(file: SweepFile, scenarioPrefix: string): SweepRow[] {
  const rows = file.rows.filter((r) => r.scenario.startsWith(scenarioPrefix));
  if (rows.length === 0) {
    throw new SchemaError(`no "${scenarioPrefix}" rows in sweep file`);
  }
  return rows;
}

function baseOption(title: string, xName: string, xType: "value" | "log"): EChartsOption {
  return {
    animation: false,
    title: { text: title, left: "center", textStyle: { fontSize: 15 } },
    legend: { bottom: 0, type: "plain" },
    grid: { left: 60, right: 30, top: 50, bottom: 80 },
    xAxis: { type: xType, name: xName, nameLocation: "middle", nameGap: 28 },
    yAxis: { type: "value", name: "sum rate (bits/s/Hz)", nameLocation: "middle", nameGap: 40 },
  };
}

export function buildRateVsPowerFigure(file: SweepFile): EChartsOption {
  const rows = requireRows(file, "rate_vs_power");
  const antennaCounts = [...new Set(rows.map((r) => r.m))].sort((a, b) => a - b);
  const series: SeriesOption[] = [];
  antennaCounts.forEach((m, i) => {
    const sub = rows.filter((r) => r.m === m);
    const color = PALETTE[i % PALETTE.length];
    series.push({
      name: `M=${m} Monte-Carlo`,
      type: "line",
      data: points(sub, "p_t_db", "mc_sum_rate"),
      lineStyle: { type: "dashed", color },
      itemStyle: { color },
      symbol: "circle",
    });
    series.push({
      name: `M=${m} closed form`,
      type: "line",
      data: points(sub, "p_t_db", "cf_sum_rate"),
      lineStyle: { type: "solid", color },
      itemStyle: { color },
      symbol: "none",
    });
  });
  return { ...baseOption("Sum rate vs total transmit power", "P_t (dB)", "value"), series };
}

export function buildPowerScalingFigure(file: SweepFile): EChartsOption {
  const series: SeriesOption[] = [];
  const cases: { prefix: string; label: string; limitField: keyof SweepRow }[] = [
    { prefix: "power_scaling_case1", label: "P_t ∝ 1/M", limitField: "case1_limit" },
    { prefix: "power_scaling_case2", label: "powers ∝ 1/√M", limitField: "case2_limit" },
  ];
  cases.forEach(({ prefix, label, limitField }, i) => {
    const sub = requireRows(file, prefix).sort((a, b) => a.m - b.m);
    const color = PALETTE[i % PALETTE.length];
    const limit = sub[0][limitField] as number | null;
    if (limit === null) {
      throw new SchemaError(`missing ${String(limitField)} column on ${prefix} rows`);
    }
    series.push({
      name: `${label} closed form`,
      type: "line",
      data: points(sub, "m", "cf_sum_rate"),
      lineStyle: { type: "solid", color },
      itemStyle: { color },
      symbol: "none",
      markLine: {
        silent: true,
        symbol: "none",
        data: [{ yAxis: limit }],
        lineStyle: { type: "dotted", color, width: 1.5 },
        label: { formatter: `asymptote ${limit.toFixed(2)}`, position: "insideEndTop" },
      },
    });
    series.push({
      name: `${label} Monte-Carlo`,
      type: "line",
      data: points(sub, "m", "mc_sum_rate"),
      lineStyle: { type: "dashed", color },
      itemStyle: { color },
      symbol: "circle",
    });
  });
  const option = baseOption("Sum rate vs antenna count under power scaling", "M (antennas)", "log");
  // the case-2 asymptote sits well above the finite-M curves; widen the axis
  // so both asymptote lines stay inside the plot
  const limits = series
    .filter((s: any) => s.markLine)
    .map((s: any) => s.markLine.data[0].yAxis as number);
  option.yAxis = { ...(option.yAxis as object), max: Math.ceil(Math.max(...limits) * 1.08) };
  return { ...option, series };
}

export function buildAntennaComparisonFigure(file: SweepFile): EChartsOption {
  const rows = requireRows(file, "antenna_comparison").sort((a, b) => a.m - b.m);
  const series: SeriesOption[] = [
    {
      name: "one-bit DACs",
      type: "line",
      data: points(rows, "m", "cf_sum_rate"),
      lineStyle: { type: "solid", color: PALETTE[0] },
      itemStyle: { color: PALETTE[0] },
      symbol: "none",
    },
    {
      name: "conventional DACs",
      type: "line",
      data: points(rows, "m", "conv_sum_rate"),
      lineStyle: { type: "solid", color: PALETTE[1] },
      itemStyle: { color: PALETTE[1] },
      symbol: "none",
    },
  ];
  const crossing = file.crossing;
  if (crossing) {
    series.push({
      name: `target ${crossing.targetSumRate} bits/s/Hz`,
      type: "line",
      data: [],
      markLine: {
        silent: true,
        symbol: "none",
        lineStyle: { type: "dotted", color: "#555" },
        label: { show: true },
        data: [
          { yAxis: crossing.targetSumRate, label: { formatter: `${crossing.targetSumRate} bits/s/Hz` } },
          {
            xAxis: crossing.oneBitM,
            label: { formatter: `one-bit M=${crossing.oneBitM}`, position: "insideEndTop" },
          },
          {
            xAxis: crossing.conventionalM,
            label: { formatter: `conventional M=${crossing.conventionalM}`, position: "insideMiddleTop" },
          },
        ],
      },
    });
  }
  return {
    ...baseOption("One-bit vs conventional sum rate", "M (antennas)", "value"),
    series,
  };
}

export function buildFigure(id: FigureId, file: SweepFile): EChartsOption {
  switch (id) {
    case "fig2":
      return buildRateVsPowerFigure(file);
    case "fig3":
      return buildPowerScalingFigure(file);
    case "fig4":
      return buildAntennaComparisonFigure(file);
  }
}
