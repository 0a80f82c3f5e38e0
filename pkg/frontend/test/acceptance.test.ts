// Release gate for the browser app, one test per criterion. The fetch
// stub replays responses captured verbatim from the running service for
// the dataset in fixtures/dataset.csv, so these are parity checks
// between what the DOM shows and what the API said.

import { beforeEach, describe, expect, it, vi } from "vitest";

import type { ClusterDetail, Comparison, HeatMap, QueryResult, TreeNode } from "../src/api";
import { renderCompare } from "../src/compare";
import { rowCount } from "../src/detail";
import { App } from "../src/main";
import { highlightedIds } from "../src/tree";
import { click, fixture, fixtureText, settle, stubServiceFetch } from "./support";

function makeApp(): App {
  for (const el of Array.from(document.body.children)) el.remove();
  const ids = ["banner", "tree", "sketch", "detail", "compare"] as const;
  const el: Record<string, HTMLElement> = {};
  for (const id of ids) {
    const div = document.createElement("div");
    div.id = id;
    document.body.append(div);
    el[id] = div;
  }
  const form = document.createElement("form");
  document.body.append(form);
  return new App({
    banner: el.banner,
    tree: el.tree,
    sketch: el.sketch,
    detail: el.detail,
    compare: el.compare,
    form,
  });
}

describe("acceptance", () => {
  beforeEach(() => {
    stubServiceFetch();
  });

  it("sketching abcba highlights exactly the node set the API returns", async () => {
    const app = makeApp();
    await app.loadSession(new Blob([fixtureText("dataset.csv")]), 4, 8);
    expect(app.el.tree.querySelectorAll("g.node").length).toBeGreaterThan(0);

    // draw the upside-down wedge: a b c b a
    const shape: Array<[number, number]> = [
      [0, 0],
      [1, 1],
      [2, 2],
      [1, 3],
      [0, 4],
    ];
    for (const [l, c] of shape) {
      click(app.el.sketch.querySelector(`button.sketch-cell[data-l="${l}"][data-c="${c}"]`)!);
    }
    expect(app.el.sketch.querySelector("code.pattern-preview")!.textContent).toBe("abcba");

    click(app.el.sketch.querySelector("button.sketch-submit")!);
    await settle();

    const expected = new Set(fixture<QueryResult>("query-abcba.json").highlight_nodes);
    expect(highlightedIds(app.el.tree)).toEqual(expected);
    expect(expected.size).toBeGreaterThan(0);
  });

  it("an A-vs-A comparison renders an all-white difference grid", () => {
    const container = document.createElement("div");
    document.body.append(container);
    const cmp = fixture<Comparison>("compare-self.json"); // captured with a == b
    const hm = fixture<HeatMap>("heatmap-root.json");
    renderCompare(container, cmp, hm, hm, { onMode: vi.fn() });
    const fills = Array.from(
      container.querySelectorAll("rect.diff-cell, rect.gap-diff-cell"),
      (r) => r.getAttribute("fill"),
    );
    expect(fills).toHaveLength(cmp.alpha * cmp.omega + cmp.omega);
    expect(new Set(fills)).toEqual(new Set(["rgb(255, 255, 255)"]));
  });

  it("the detail view shows one row per member of the node", async () => {
    const app = makeApp();
    await app.loadSession(new Blob([fixtureText("dataset.csv")]), 4, 8);
    const root = fixture<TreeNode>("tree.json").id;
    await app.openDetail(root);
    await settle();
    const size = fixture<ClusterDetail>("detail-root.json").size;
    expect(rowCount(app.el.detail)).toBe(size);
    expect(size).toBe(12);
  });
});
