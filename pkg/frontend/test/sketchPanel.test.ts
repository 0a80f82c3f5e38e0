import { beforeEach, describe, expect, it, vi } from "vitest";

import { SketchGrid } from "../src/sketch";
import { renderSketchPanel, type SketchCallbacks } from "../src/sketchPanel";
import { click } from "./support";

describe("renderSketchPanel", () => {
  let container: HTMLElement;
  let grid: SketchGrid;
  let cb: SketchCallbacks;

  beforeEach(() => {
    container = document.createElement("div");
    document.body.append(container);
    grid = new SketchGrid(4, 8);
    cb = { onSubmit: vi.fn(), onIdLookup: vi.fn(), onClear: vi.fn() };
  });

  const cell = (l: number, c: number) =>
    container.querySelector(`button.sketch-cell[data-l="${l}"][data-c="${c}"]`)!;

  it("renders the full alpha-by-omega grid with the submit disabled", () => {
    renderSketchPanel(container, grid, [], cb);
    expect(container.querySelectorAll("button.sketch-cell")).toHaveLength(32);
    expect(container.querySelector("button.sketch-submit")!.hasAttribute("disabled")).toBe(true);
    expect(container.querySelector("code.pattern-preview")!.textContent).toContain("draw");
  });

  it("toggling cells updates the preview and enables submission", () => {
    renderSketchPanel(container, grid, [], cb);
    click(cell(0, 0));
    click(cell(1, 1));
    click(cell(2, 2));
    click(cell(1, 3));
    click(cell(0, 4));
    expect(container.querySelector("code.pattern-preview")!.textContent).toBe("abcba");
    const submit = container.querySelector("button.sketch-submit")!;
    expect(submit.hasAttribute("disabled")).toBe(false);
    click(submit);
    expect(cb.onSubmit).toHaveBeenCalledWith([[0], [1], [2], [1], [0]]);
  });

  it("clear empties the grid and notifies the caller", () => {
    grid.toggle(2, 3);
    renderSketchPanel(container, grid, [], cb);
    click(container.querySelector("button.sketch-clear")!);
    expect(grid.isEmpty()).toBe(true);
    expect(cb.onClear).toHaveBeenCalledOnce();
    expect(container.querySelector("button.sketch-submit")!.hasAttribute("disabled")).toBe(true);
  });

  it("lists series ids for lookup and reports a choice", () => {
    renderSketchPanel(container, grid, ["s1", "s2"], cb);
    const select = container.querySelector<HTMLSelectElement>("select.id-select")!;
    expect(Array.from(select.options, (o) => o.value)).toEqual(["", "s1", "s2"]);
    select.value = "s2";
    select.dispatchEvent(new Event("change"));
    expect(cb.onIdLookup).toHaveBeenCalledWith("s2");
  });
});
