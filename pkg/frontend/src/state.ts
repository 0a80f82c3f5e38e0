import type { QueryResult } from "./api";

export interface Transform {
  x: number;
  y: number;
  k: number;
}

/**
 * Client-side view state. Nothing in here is analytic — it only remembers
 * what the user is looking at. Mutators enforce the selection rules:
 * the comparison pair holds at most two distinct visible nodes, and
 * series selections must reference ids present in the session.
 */
export class ViewState {
  sessionId: string | null = null;
  transform: Transform = { x: 0, y: 0, k: 1 };
  expanded = new Set<string>();
  hovered: string | null = null;
  comparison: string[] = [];
  selectedSeries: string[] = [];
  query: QueryResult | null = null;

  reset(sessionId: string): void {
    this.sessionId = sessionId;
    this.transform = { x: 0, y: 0, k: 1 };
    this.expanded.clear();
    this.hovered = null;
    this.comparison = [];
    this.selectedSeries = [];
    this.query = null;
  }

  /** Toggle a node in/out of the comparison pair. Returns true if anything changed. */
  toggleComparison(nodeId: string, visible: ReadonlySet<string>): boolean {
    if (!visible.has(nodeId)) return false;
    const at = this.comparison.indexOf(nodeId);
    if (at >= 0) {
      this.comparison.splice(at, 1);
      return true;
    }
    if (this.comparison.length >= 2) return false;
    this.comparison.push(nodeId);
    return true;
  }

  /** Drop comparison members that are no longer visible (e.g. after a reload). */
  pruneComparison(visible: ReadonlySet<string>): void {
    this.comparison = this.comparison.filter((id) => visible.has(id));
  }

  toggleSeries(seriesId: string, known: ReadonlySet<string>): boolean {
    if (!known.has(seriesId)) return false;
    const at = this.selectedSeries.indexOf(seriesId);
    if (at >= 0) {
      this.selectedSeries.splice(at, 1);
      return true;
    }
    if (this.selectedSeries.length >= 2) return false;
    this.selectedSeries.push(seriesId);
    return true;
  }

  setQuery(result: QueryResult | null): void {
    this.query = result;
  }

  highlightSet(): Set<string> {
    return new Set(this.query ? this.query.highlight_nodes : []);
  }
}
