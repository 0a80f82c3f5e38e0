import {
  ApiError,
  NavigatorApi,
  type ClusterDetail,
  type HeatMap,
  type SessionInfo,
  type TreeNode,
} from "./api";
import { renderCompare } from "./compare";
import { applySelection, renderDetail } from "./detail";
import { SketchGrid } from "./sketch";
import { renderSketchPanel } from "./sketchPanel";
import { ViewState } from "./state";
import { applyComparison, applyHighlights, renderTree } from "./tree";

function collectIds(node: TreeNode, into: Set<string>): Set<string> {
  into.add(node.id);
  for (const c of node.children) collectIds(c, into);
  return into;
}

function collectMembers(node: TreeNode, into: Set<string>): Set<string> {
  for (const id of node.member_ids ?? []) into.add(id);
  for (const c of node.children) collectMembers(c, into);
  return into;
}

class App {
  readonly api = new NavigatorApi("");
  readonly state = new ViewState();
  info: SessionInfo | null = null;
  tree: TreeNode | null = null;
  grid: SketchGrid | null = null;
  heatmaps = new Map<string, HeatMap>();
  detail: ClusterDetail | null = null;
  compareMode: "percent" | "counts" = "percent";

  private detailCtl: AbortController | null = null;
  private compareCtl: AbortController | null = null;
  private queryCtl: AbortController | null = null;

  constructor(
    readonly el: {
      banner: HTMLElement;
      tree: HTMLElement;
      sketch: HTMLElement;
      detail: HTMLElement;
      compare: HTMLElement;
      form: HTMLFormElement;
    },
  ) {
    el.form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.createSession();
    });
  }

  banner(message: string | null): void {
    this.el.banner.textContent = message ?? "";
    this.el.banner.style.display = message ? "block" : "none";
  }

  private report(err: unknown): void {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (err instanceof ApiError) this.banner(err.message);
    else this.banner("service unreachable — is `saxplore serve` running?");
  }

  async createSession(): Promise<void> {
    const data = new FormData(this.el.form);
    const file = data.get("file");
    if (!(file instanceof Blob) || file.size === 0) {
      this.banner("choose a dataset file first");
      return;
    }
    await this.loadSession(file, Number(data.get("alpha") ?? 4), Number(data.get("omega") ?? 8));
  }

  async loadSession(file: Blob, alpha: number, omega: number): Promise<void> {
    try {
      this.info = await this.api.createSession(file, { alpha, omega });
      this.banner(null);
      this.state.reset(this.info.id);
      this.grid = new SketchGrid(this.info.alpha, this.info.omega);
      this.tree = await this.api.tree(this.info.id);
      this.heatmaps.clear();
      this.el.detail.textContent = "";
      this.el.compare.textContent = "";
      this.renderAll();
      await this.fetchVisibleHeatmaps();
    } catch (err) {
      this.report(err);
    }
  }

  renderAll(): void {
    if (!this.tree || !this.info || !this.grid) return;
    renderTree(this.el.tree, this.tree, this.state, this.heatmaps, {
      onNodeClick: (id, ev) => void this.nodeClicked(id, ev),
      onDwell: (id) => void this.openDetail(id),
      onTransform: (t) => {
        this.state.transform = t;
      },
    });
    renderSketchPanel(this.el.sketch, this.grid, this.memberIds(), {
      onSubmit: (columns) => void this.runSketch(columns),
      onIdLookup: (id) => void this.runIdLookup(id),
      onClear: () => {
        this.state.setQuery(null);
        applyHighlights(this.el.tree, this.state.highlightSet());
      },
    });
  }

  memberIds(): string[] {
    return this.tree ? Array.from(collectMembers(this.tree, new Set())).sort() : [];
  }

  visibleIds(): Set<string> {
    return this.tree ? collectIds(this.tree, new Set()) : new Set();
  }

  async fetchVisibleHeatmaps(): Promise<void> {
    if (!this.info || !this.tree) return;
    const sid = this.info.id;
    const missing = Array.from(this.visibleIds()).filter((id) => !this.heatmaps.has(id));
    const settled = await Promise.allSettled(
      missing.map(async (id) => this.heatmaps.set(id, await this.api.heatmap(sid, id))),
    );
    if (settled.some((s) => s.status === "fulfilled")) this.renderAll();
  }

  async nodeClicked(id: string, ev: MouseEvent): Promise<void> {
    if (!this.info || !this.tree) return;
    if (ev.shiftKey) {
      this.state.toggleComparison(id, this.visibleIds());
      applyComparison(this.el.tree, this.state.comparison);
      if (this.state.comparison.length === 2) await this.openCompare();
      return;
    }
    const visible = this.findNode(this.tree, id);
    if (visible?.collapsed) {
      try {
        this.tree = await this.api.expand(this.info.id, id);
        this.state.expanded.add(id);
        this.state.pruneComparison(this.visibleIds());
        this.renderAll();
        await this.fetchVisibleHeatmaps();
      } catch (err) {
        this.report(err);
      }
    } else {
      await this.openDetail(id);
    }
  }

  private findNode(node: TreeNode, id: string): TreeNode | null {
    if (node.id === id) return node;
    for (const c of node.children) {
      const hit = this.findNode(c, id);
      if (hit) return hit;
    }
    return null;
  }

  async openDetail(id: string): Promise<void> {
    if (!this.info) return;
    this.detailCtl?.abort();
    this.detailCtl = new AbortController();
    this.state.hovered = id;
    try {
      this.detail = await this.api.detail(this.info.id, id, this.detailCtl.signal);
      renderDetail(this.el.detail, this.detail, this.state, {
        onRowHover: (seriesId) => void this.rowHover(seriesId),
        onRowClick: (seriesId) => {
          const known = new Set(this.detail?.members.map((m) => m.id) ?? []);
          this.state.toggleSeries(seriesId, known);
          applySelection(this.el.detail, this.state.selectedSeries);
        },
      });
    } catch (err) {
      this.report(err);
    }
  }

  /** Brushing table -> tree: hovering a row lights up that series' path. */
  async rowHover(seriesId: string | null): Promise<void> {
    if (!this.info) return;
    this.queryCtl?.abort();
    if (seriesId === null) {
      applyHighlights(this.el.tree, this.state.highlightSet());
      return;
    }
    this.queryCtl = new AbortController();
    try {
      const res = await this.api.query(
        this.info.id,
        { type: "id", id: seriesId },
        this.queryCtl.signal,
      );
      applyHighlights(this.el.tree, new Set(res.highlight_nodes));
    } catch (err) {
      this.report(err);
    }
  }

  async runSketch(columns: number[][]): Promise<void> {
    if (!this.info) return;
    this.queryCtl?.abort();
    this.queryCtl = new AbortController();
    try {
      const res = await this.api.query(
        this.info.id,
        { type: "sketch", columns },
        this.queryCtl.signal,
      );
      this.state.setQuery(res);
      applyHighlights(this.el.tree, this.state.highlightSet());
      this.banner(null);
    } catch (err) {
      this.report(err);
    }
  }

  async runIdLookup(id: string): Promise<void> {
    if (!this.info) return;
    try {
      const res = await this.api.query(this.info.id, { type: "id", id });
      this.state.setQuery(res);
      applyHighlights(this.el.tree, this.state.highlightSet());
    } catch (err) {
      this.report(err);
    }
  }

  async openCompare(): Promise<void> {
    if (!this.info || this.state.comparison.length !== 2) return;
    const [a, b] = this.state.comparison;
    this.compareCtl?.abort();
    this.compareCtl = new AbortController();
    const signal = this.compareCtl.signal;
    try {
      const sid = this.info.id;
      const [cmp, hmA, hmB] = await Promise.all([
        this.api.compare(sid, a, b, this.compareMode, signal),
        this.api.heatmap(sid, a, signal),
        this.api.heatmap(sid, b, signal),
      ]);
      renderCompare(this.el.compare, cmp, hmA, hmB, {
        onMode: (mode) => {
          this.compareMode = mode;
          void this.openCompare();
        },
      });
    } catch (err) {
      this.report(err);
    }
  }
}

export { App, collectIds, collectMembers };

// Browser bootstrap; tests import the pieces directly instead.
if (typeof document !== "undefined" && document.getElementById("tree")) {
  const byId = (id: string) => document.getElementById(id) as HTMLElement;
  new App({
    banner: byId("banner"),
    tree: byId("tree"),
    sketch: byId("sketch"),
    detail: byId("detail"),
    compare: byId("compare"),
    form: document.getElementById("session-form") as HTMLFormElement,
  });
}
