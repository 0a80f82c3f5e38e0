// Typed client for the saxplore HTTP service. The UI never computes
// analytics itself; everything it renders comes through here.

export interface SessionInfo {
  id: string;
  dataset_id: string;
  n_series: number;
  alpha: number;
  omega: number;
  mu: number;
  sigma: number;
  breakpoints: number[];
  bin_width: number;
  min_fraction: number;
  created_at: string;
}

export interface TreeNode {
  id: string;
  size: number;
  height: number;
  collapsed: boolean;
  children: TreeNode[];
  member_ids?: string[];
}

export interface Member {
  id: string;
  word: string;
  meta: Record<string, string>;
  n_samples: number;
  downsampled: boolean;
  t: number[];
  v: number[];
  z: number[];
}

export interface ClusterDetail {
  node: string;
  size: number;
  members: Member[];
}

export interface HeatMap {
  alpha: number;
  omega: number;
  size: number;
  cells: number[][];
  gap: number[];
}

export interface Band {
  mean: (number | null)[];
  std: number[];
  support: number[];
  ranks: string;
}

export interface Comparison {
  mode: string;
  alpha: number;
  omega: number;
  size_a: number;
  size_b: number;
  diff: number[][];
  gap_diff: number[];
  band_a: Band;
  band_b: Band;
}

export interface QueryResult {
  matched_ids: string[];
  highlight_nodes: string[];
  pattern_source: string;
}

export type QueryRequest =
  | { type: "sketch"; columns: number[][] }
  | { type: "id"; id: string };

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export interface SessionOptions {
  alpha?: number;
  omega?: number;
  minFraction?: number;
  format?: string;
  metadata?: Blob;
}

export class NavigatorApi {
  constructor(private readonly base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, init);
    if (!resp.ok) {
      let message = `${resp.status} ${resp.statusText}`;
      try {
        const body = await resp.json();
        if (body && typeof body.error === "string") message = body.error;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(resp.status, message);
    }
    return resp.json() as Promise<T>;
  }

  private post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
  }

  async createSession(file: Blob, opts: SessionOptions = {}): Promise<SessionInfo> {
    const form = new FormData();
    form.append("file", file, "upload.csv");
    if (opts.metadata) form.append("metadata", opts.metadata, "meta.csv");
    if (opts.format) form.append("format", opts.format);
    if (opts.alpha !== undefined) form.append("alpha", String(opts.alpha));
    if (opts.omega !== undefined) form.append("omega", String(opts.omega));
    if (opts.minFraction !== undefined) form.append("min_fraction", String(opts.minFraction));
    return this.json<SessionInfo>("/sessions", { method: "POST", body: form });
  }

  session(sid: string): Promise<SessionInfo> {
    return this.json(`/sessions/${sid}`);
  }

  tree(sid: string): Promise<TreeNode> {
    return this.json(`/sessions/${sid}/tree`);
  }

  expand(sid: string, node: string): Promise<TreeNode> {
    return this.json(`/sessions/${sid}/tree/${node}/expand`, { method: "POST" });
  }

  detail(sid: string, node: string, signal?: AbortSignal): Promise<ClusterDetail> {
    return this.json(`/sessions/${sid}/clusters/${node}`, { signal });
  }

  heatmap(sid: string, node: string, signal?: AbortSignal): Promise<HeatMap> {
    return this.json(`/sessions/${sid}/clusters/${node}/heatmap`, { signal });
  }

  band(sid: string, node: string, signal?: AbortSignal): Promise<Band> {
    return this.json(`/sessions/${sid}/clusters/${node}/band`, { signal });
  }

  compare(sid: string, a: string, b: string, mode: string, signal?: AbortSignal): Promise<Comparison> {
    return this.post(`/sessions/${sid}/compare`, { a, b, mode }, signal);
  }

  query(sid: string, request: QueryRequest, signal?: AbortSignal): Promise<QueryResult> {
    return this.post(`/sessions/${sid}/query`, request, signal);
  }

  series(sid: string, seriesId: string, signal?: AbortSignal): Promise<Member> {
    return this.json(`/sessions/${sid}/series/${seriesId}`, { signal });
  }
}
