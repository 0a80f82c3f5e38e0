import * as d3 from "d3";

import type { Band, Comparison, HeatMap } from "./api";
import { DIFF_NEGATIVE, DIFF_POSITIVE, GAP_GREY, diffColor, heatColor } from "./color";

export interface CompareCallbacks {
  onMode(mode: "percent" | "counts"): void;
}

const CELL = 16;
const BAND_W = 420;
const BAND_H = 120;

/**
 * Two-cluster comparison: cluster A's heat map on the left, B's on the
 * right, and between them the signed A-minus-B difference grid (green
 * where A dominates, magenta where B does, white where they agree).
 * Below, both mean±1σ band charts share one rank axis. The counts /
 * percent toggle defers to the caller, which re-requests the comparison
 * from the service — no client-side arithmetic on the grids.
 */
export function renderCompare(
  container: HTMLElement,
  cmp: Comparison,
  hmA: HeatMap,
  hmB: HeatMap,
  cb: CompareCallbacks,
): void {
  container.textContent = "";
  const rootSel = d3.select(container).append("div").attr("class", "compare");

  const controls = rootSel.append("div").attr("class", "compare-controls");
  controls.append("span").text(`A (${cmp.size_a}) vs B (${cmp.size_b}) — `);
  for (const mode of ["percent", "counts"] as const) {
    controls
      .append("button")
      .attr("data-mode", mode)
      .classed("active", cmp.mode === mode)
      .text(mode)
      .on("click", () => cb.onMode(mode));
  }

  const grids = rootSel.append("div").attr("class", "compare-grids");
  drawHeatMap(grids, hmA, "hm-a");
  drawDiff(grids, cmp);
  drawHeatMap(grids, hmB, "hm-b");

  drawBands(rootSel, cmp.band_a, cmp.band_b, cmp.alpha);
}

function drawHeatMap(
  parent: d3.Selection<HTMLDivElement, unknown, null, undefined>,
  hm: HeatMap,
  cls: string,
): void {
  const svg = parent
    .append("svg")
    .attr("class", `hm ${cls}`)
    .attr("width", hm.omega * CELL)
    .attr("height", (hm.alpha + 1) * CELL + 2);
  for (let l = 0; l < hm.alpha; l++) {
    for (let t = 0; t < hm.omega; t++) {
      svg
        .append("rect")
        .attr("class", "cell")
        .attr("x", t * CELL)
        .attr("y", (hm.alpha - 1 - l) * CELL)
        .attr("width", CELL - 1)
        .attr("height", CELL - 1)
        .attr("fill", heatColor(hm.cells[l][t]));
    }
  }
  for (let t = 0; t < hm.omega; t++) {
    svg
      .append("rect")
      .attr("class", "gap-cell")
      .attr("x", t * CELL)
      .attr("y", hm.alpha * CELL + 2)
      .attr("width", CELL - 1)
      .attr("height", CELL - 1)
      .attr("fill", GAP_GREY)
      .attr("fill-opacity", hm.gap[t]);
  }
}

function drawDiff(
  parent: d3.Selection<HTMLDivElement, unknown, null, undefined>,
  cmp: Comparison,
): void {
  const flat = cmp.diff.flat().concat(cmp.gap_diff);
  const scale = Math.max(...flat.map(Math.abs));

  const svg = parent
    .append("svg")
    .attr("class", "hm hm-diff")
    .attr("width", cmp.omega * CELL)
    .attr("height", (cmp.alpha + 1) * CELL + 2);
  for (let l = 0; l < cmp.alpha; l++) {
    for (let t = 0; t < cmp.omega; t++) {
      svg
        .append("rect")
        .attr("class", "diff-cell")
        .attr("data-l", l)
        .attr("data-t", t)
        .attr("x", t * CELL)
        .attr("y", (cmp.alpha - 1 - l) * CELL)
        .attr("width", CELL - 1)
        .attr("height", CELL - 1)
        .attr("fill", diffColor(cmp.diff[l][t], scale));
    }
  }
  for (let t = 0; t < cmp.omega; t++) {
    svg
      .append("rect")
      .attr("class", "gap-diff-cell")
      .attr("data-t", t)
      .attr("x", t * CELL)
      .attr("y", cmp.alpha * CELL + 2)
      .attr("width", CELL - 1)
      .attr("height", CELL - 1)
      .attr("fill", diffColor(cmp.gap_diff[t], scale));
  }
}

function drawBands(
  parent: d3.Selection<HTMLDivElement, unknown, null, undefined>,
  a: Band,
  b: Band,
  alpha: number,
): void {
  const omega = a.mean.length;
  const x = d3.scaleLinear().domain([0, omega - 1]).range([10, BAND_W - 10]);
  const y = d3.scaleLinear().domain([0, alpha - 1]).range([BAND_H - 10, 10]);

  const svg = parent
    .append("svg")
    .attr("class", "band-chart")
    .attr("viewBox", `0 0 ${BAND_W} ${BAND_H}`);

  const defined = (band: Band) => (_: unknown, i: number) => band.mean[i] !== null;
  const area = (band: Band) =>
    d3
      .area<number>()
      .defined(defined(band))
      .x((_, i) => x(i))
      .y0((_, i) => y((band.mean[i] ?? 0) - band.std[i]))
      .y1((_, i) => y((band.mean[i] ?? 0) + band.std[i]));
  const mid = (band: Band) =>
    d3
      .line<number>()
      .defined(defined(band))
      .x((_, i) => x(i))
      .y((_, i) => y(band.mean[i] ?? 0));

  const bins = d3.range(omega);
  for (const [band, cls, color] of [
    [a, "band-a", DIFF_POSITIVE],
    [b, "band-b", DIFF_NEGATIVE],
  ] as const) {
    svg
      .append("path")
      .attr("class", `band-area ${cls}`)
      .attr("fill", color)
      .attr("fill-opacity", 0.18)
      .attr("d", area(band)(bins) ?? "");
    svg
      .append("path")
      .attr("class", `band-mean ${cls}`)
      .attr("fill", "none")
      .attr("stroke", color)
      .attr("stroke-width", 1.6)
      .attr("d", mid(band)(bins) ?? "");
  }
}
