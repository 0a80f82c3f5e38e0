import * as d3 from "d3";

import type { HeatMap, TreeNode } from "./api";
import { GAP_GREY, heatColor, linkWidth } from "./color";
import type { Transform, ViewState } from "./state";

export interface TreeCallbacks {
  onNodeClick(id: string, event: MouseEvent): void;
  onDwell(id: string): void;
  onTransform(t: Transform): void;
}

export const HOVER_DWELL_MS = 250;

const ROW_GAP = 44;
const DEPTH_GAP = 170;
const THUMB_CELL = 2.5;

type Node = d3.HierarchyPointNode<TreeNode>;

/**
 * Horizontal node-link dendrogram. Every node is a circle with its
 * cluster size plus (when the heat map has been fetched) a thumbnail
 * of per-bin letter proportions; link widths double-encode subtree
 * size. Pan/zoom state round-trips through the ViewState so a
 * re-render never loses the camera.
 */
export function renderTree(
  container: HTMLElement,
  tree: TreeNode,
  state: ViewState,
  heatmaps: ReadonlyMap<string, HeatMap>,
  cb: TreeCallbacks,
): void {
  container.textContent = "";

  const root = d3.hierarchy<TreeNode>(tree);
  d3.tree<TreeNode>().nodeSize([ROW_GAP, DEPTH_GAP])(root);
  const total = tree.size;

  const svg = d3
    .select(container)
    .append("svg")
    .attr("class", "tree-svg")
    .attr("width", "100%")
    .attr("height", "100%");
  const viewport = svg.append("g").attr("class", "viewport");

  const zoom = d3
    .zoom<SVGSVGElement, unknown>()
    .scaleExtent([0.2, 8])
    // constant viewport extent: d3's default reads svg.viewBox, which
    // not every drawing context provides
    .extent([
      [0, 0],
      [1200, 800],
    ])
    .on("zoom", (event) => {
      viewport.attr("transform", event.transform.toString());
      const { x, y, k } = event.transform;
      cb.onTransform({ x, y, k });
    });
  svg.call(zoom);
  const t = state.transform;
  svg.call(zoom.transform, d3.zoomIdentity.translate(t.x, t.y).scale(t.k));

  viewport
    .append("g")
    .attr("class", "links")
    .selectAll("path")
    .data(root.links())
    .join("path")
    .attr("class", "link")
    .attr("data-target", (d) => d.target.data.id)
    .attr("fill", "none")
    .attr("stroke", "#777")
    .attr("stroke-width", (d) => linkWidth(d.target.data.size, total))
    .attr(
      "d",
      d3
        .linkHorizontal<d3.HierarchyPointLink<TreeNode>, Node>()
        .x((d) => d.y)
        .y((d) => d.x) as any,
    );

  const dwellTimers = new Map<string, number>();
  const nodes = viewport
    .append("g")
    .attr("class", "nodes")
    .selectAll("g")
    .data(root.descendants())
    .join("g")
    .attr("class", "node")
    .attr("data-id", (d) => d.data.id)
    .classed("collapsed", (d) => d.data.collapsed)
    .attr("transform", (d) => `translate(${(d as Node).y},${(d as Node).x})`)
    .on("click", (event: MouseEvent, d) => cb.onNodeClick(d.data.id, event))
    .on("mouseenter", (_event, d) => {
      const id = d.data.id;
      dwellTimers.set(
        id,
        window.setTimeout(() => cb.onDwell(id), HOVER_DWELL_MS),
      );
    })
    .on("mouseleave", (_event, d) => {
      const timer = dwellTimers.get(d.data.id);
      if (timer !== undefined) window.clearTimeout(timer);
      dwellTimers.delete(d.data.id);
    });

  nodes
    .append("circle")
    .attr("r", 13)
    .attr("fill", (d) => (d.data.collapsed ? "#E8EAF6" : "#FFFFFF"))
    .attr("stroke", "#333");

  nodes
    .append("text")
    .attr("class", "size-label")
    .attr("text-anchor", "middle")
    .attr("dy", "0.32em")
    .attr("font-size", 9)
    .text((d) => d.data.size);

  nodes.each(function (d) {
    const hm = heatmaps.get(d.data.id);
    if (hm) drawThumbnail(d3.select(this as SVGGElement), hm);
  });

  applyHighlights(container, state.highlightSet());
  applyComparison(container, state.comparison);
}

function drawThumbnail(g: d3.Selection<SVGGElement, unknown, null, undefined>, hm: HeatMap): void {
  const thumb = g
    .append("g")
    .attr("class", "thumb")
    .attr("transform", `translate(17,${(-hm.alpha * THUMB_CELL) / 2})`);
  for (let l = 0; l < hm.alpha; l++) {
    for (let t = 0; t < hm.omega; t++) {
      thumb
        .append("rect")
        .attr("x", t * THUMB_CELL)
        // letter alpha-1 on top: high letters sit high
        .attr("y", (hm.alpha - 1 - l) * THUMB_CELL)
        .attr("width", THUMB_CELL)
        .attr("height", THUMB_CELL)
        .attr("fill", heatColor(hm.cells[l][t]));
    }
  }
  // gap strip under the letters, grey by gap share
  for (let t = 0; t < hm.omega; t++) {
    thumb
      .append("rect")
      .attr("class", "gap-cell")
      .attr("x", t * THUMB_CELL)
      .attr("y", hm.alpha * THUMB_CELL + 1)
      .attr("width", THUMB_CELL)
      .attr("height", THUMB_CELL)
      .attr("fill", GAP_GREY)
      .attr("fill-opacity", hm.gap[t]);
  }
}

/**
 * Restyle query highlights in place. The set of .node elements carrying
 * the `qhl` class is exactly the id set handed in; a link lights up when
 * both its endpoints do (i.e. it lies on a highlighted root-leaf path).
 */
export function applyHighlights(container: HTMLElement, highlight: ReadonlySet<string>): void {
  d3.select(container)
    .selectAll<SVGGElement, Node>("g.node")
    .classed("qhl", (d) => highlight.has(d.data.id));
  d3.select(container)
    .selectAll<SVGPathElement, d3.HierarchyPointLink<TreeNode>>("path.link")
    .classed("qhl", (d) => highlight.has(d.source.data.id) && highlight.has(d.target.data.id));
}

export function applyComparison(container: HTMLElement, pair: readonly string[]): void {
  d3.select(container)
    .selectAll<SVGGElement, Node>("g.node")
    .classed("cmp-a", (d) => pair[0] === d.data.id)
    .classed("cmp-b", (d) => pair[1] === d.data.id);
}

/** Ids of nodes currently carrying highlight styling, for parity checks. */
export function highlightedIds(container: HTMLElement): Set<string> {
  const out = new Set<string>();
  container.querySelectorAll("g.node.qhl").forEach((el) => {
    const id = el.getAttribute("data-id");
    if (id) out.add(id);
  });
  return out;
}
