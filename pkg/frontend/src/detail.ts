import * as d3 from "d3";

import type { ClusterDetail, Member } from "./api";
import { EMPHASIS_BLUE, EMPHASIS_GOLD } from "./color";
import type { ViewState } from "./state";

export interface DetailCallbacks {
  onRowHover(id: string | null): void;
  onRowClick(id: string): void;
}

const CHART_W = 520;
const CHART_H = 180;
const SPARK_W = 80;
const SPARK_H = 18;

/**
 * Cluster detail view: every member's normalized curve superimposed in
 * one chart, then a table of id / metadata / sample count with a
 * sparkline per row. One row per member, always — the table length is
 * the cluster size. Hover and selection emphasis are applied in place
 * so brushing does not re-render the panel.
 */
export function renderDetail(
  container: HTMLElement,
  detail: ClusterDetail,
  state: ViewState,
  cb: DetailCallbacks,
): void {
  container.textContent = "";
  const rootSel = d3.select(container).append("div").attr("class", "detail");
  rootSel.append("h3").text(`${detail.node} — ${detail.size} series`);

  const tAll = detail.members.flatMap((m) => [m.t[0], m.t[m.t.length - 1]]);
  const zAll = detail.members.flatMap((m) => d3.extent(m.z) as [number, number]);
  const x = d3.scaleLinear().domain(d3.extent(tAll) as [number, number]).range([4, CHART_W - 4]);
  const y = d3.scaleLinear().domain(d3.extent(zAll) as [number, number]).range([CHART_H - 4, 4]);

  const chart = rootSel
    .append("svg")
    .attr("class", "detail-chart")
    .attr("viewBox", `0 0 ${CHART_W} ${CHART_H}`);

  for (const m of detail.members) {
    const path = m.z.map((zv, i) => [x(m.t[i]), y(zv)] as [number, number]);
    chart
      .append("path")
      .attr("class", "series-line")
      .attr("data-id", m.id)
      .attr("fill", "none")
      .attr("stroke", "#4A5A7A")
      .attr("stroke-opacity", 0.45)
      .attr("d", d3.line()(path) ?? "");
  }

  const metaKeys = Array.from(
    new Set(detail.members.flatMap((m) => Object.keys(m.meta))),
  ).sort();

  const table = rootSel.append("table").attr("class", "detail-table");
  const head = table.append("thead").append("tr");
  head.append("th").text("id");
  for (const k of metaKeys) head.append("th").text(k);
  head.append("th").text("samples");
  head.append("th").text("shape");

  const body = table.append("tbody");
  for (const m of detail.members) {
    const row = body
      .append("tr")
      .attr("data-id", m.id)
      .on("mouseenter", () => {
        emphasizeRow(container, m.id);
        cb.onRowHover(m.id);
      })
      .on("mouseleave", () => {
        emphasizeRow(container, null);
        cb.onRowHover(null);
      })
      .on("click", () => cb.onRowClick(m.id));
    row.append("td").text(m.id);
    for (const k of metaKeys) row.append("td").text(m.meta[k] ?? "");
    row.append("td").text(m.downsampled ? `${m.n_samples}*` : String(m.n_samples));
    const spark = row
      .append("td")
      .append("svg")
      .attr("class", "sparkline")
      .attr("viewBox", `0 0 ${SPARK_W} ${SPARK_H}`);
    const sx = d3.scaleLinear().domain([m.t[0], m.t[m.t.length - 1]]).range([1, SPARK_W - 1]);
    const sy = d3
      .scaleLinear()
      .domain(d3.extent(m.z) as [number, number])
      .range([SPARK_H - 1, 1]);
    spark
      .append("path")
      .attr("fill", "none")
      .attr("stroke", "#4A5A7A")
      .attr("d", d3.line()(m.z.map((zv, i) => [sx(m.t[i]), sy(zv)] as [number, number])) ?? "");
  }

  applySelection(container, state.selectedSeries);
}

/** Transient hover emphasis: one line/row bold, cleared with null. */
export function emphasizeRow(container: HTMLElement, id: string | null): void {
  d3.select(container)
    .selectAll<SVGPathElement, unknown>("path.series-line")
    .classed("hovered", function () {
      return id !== null && this.getAttribute("data-id") === id;
    });
  d3.select(container)
    .selectAll<HTMLTableRowElement, unknown>("tbody tr")
    .classed("hovered", function () {
      return id !== null && this.getAttribute("data-id") === id;
    });
}

/**
 * Persistent 1:1 selection styling: first pick gold, second blue, and
 * once two are chosen everything else drops to grey.
 */
export function applySelection(container: HTMLElement, selected: readonly string[]): void {
  const [first, second] = selected;
  const color = (id: string | null) =>
    id === first ? EMPHASIS_GOLD : id === second ? EMPHASIS_BLUE : null;
  d3.select(container)
    .selectAll<SVGPathElement, unknown>("path.series-line")
    .each(function () {
      const id = this.getAttribute("data-id");
      const c = color(id);
      d3.select(this)
        .classed("selected", c !== null)
        .classed("dimmed", c === null && selected.length === 2)
        .attr("stroke", c ?? "#4A5A7A")
        .attr("stroke-opacity", c ? 1 : selected.length === 2 ? 0.15 : 0.45);
    });
  d3.select(container)
    .selectAll<HTMLTableRowElement, unknown>("tbody tr")
    .each(function () {
      const id = this.getAttribute("data-id");
      const c = color(id);
      const row = d3.select(this).classed("selected", c !== null);
      if (c) row.style("background", `${c}22`);
      else row.style("background", null);
    });
}

export function rowCount(container: HTMLElement): number {
  return container.querySelectorAll("table.detail-table tbody tr").length;
}

export function singletonMember(detail: ClusterDetail): Member | null {
  return detail.size === 1 ? detail.members[0] : null;
}
