import * as d3 from "d3";

import { SketchGrid, letterOf } from "./sketch";

export interface SketchCallbacks {
  onSubmit(columns: number[][]): void;
  onIdLookup(id: string): void;
  onClear(): void;
}

/**
 * The drawable query grid: alpha rows (letters, highest on top) by omega
 * columns (bins). Toggling cells rebuilds the pattern preview and the
 * submit button's enabled state; the id dropdown is the non-drawing
 * lookup path.
 */
export function renderSketchPanel(
  container: HTMLElement,
  grid: SketchGrid,
  seriesIds: readonly string[],
  cb: SketchCallbacks,
): void {
  container.textContent = "";
  const rootSel = d3.select(container).append("div").attr("class", "sketch-panel");

  const table = rootSel.append("table").attr("class", "sketch-grid");
  for (let l = grid.alpha - 1; l >= 0; l--) {
    const tr = table.append("tr");
    tr.append("th").text(letterOf(l));
    for (let c = 0; c < grid.omega; c++) {
      tr.append("td")
        .append("button")
        .attr("class", "sketch-cell")
        .attr("data-l", l)
        .attr("data-c", c)
        .classed("on", grid.isSet(l, c))
        .on("click", () => {
          grid.toggle(l, c);
          renderSketchPanel(container, grid, seriesIds, cb);
        });
    }
  }

  const legend = rootSel.append("div").attr("class", "sketch-legend");
  legend.append("span").text("pattern: ");
  legend
    .append("code")
    .attr("class", "pattern-preview")
    .text(grid.isEmpty() ? "(draw on the grid)" : grid.preview());

  const actions = rootSel.append("div").attr("class", "sketch-actions");
  actions
    .append("button")
    .attr("class", "sketch-submit")
    .attr("disabled", grid.isEmpty() ? "" : null)
    .text("find matches")
    .on("click", () => {
      if (!grid.isEmpty()) cb.onSubmit(grid.columns());
    });
  actions
    .append("button")
    .attr("class", "sketch-clear")
    .text("clear")
    .on("click", () => {
      grid.clear();
      cb.onClear();
      renderSketchPanel(container, grid, seriesIds, cb);
    });

  const lookup = rootSel.append("div").attr("class", "id-lookup");
  lookup.append("label").text("or look up a series: ");
  const select = lookup.append("select").attr("class", "id-select");
  select.append("option").attr("value", "").text("—");
  for (const id of seriesIds) select.append("option").attr("value", id).text(id);
  select.on("change", function () {
    const value = (this as HTMLSelectElement).value;
    if (value) cb.onIdLookup(value);
  });
}
