import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T = any>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf8"));
}

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

export interface RecordedCall {
  url: string;
  method: string;
  body: any;
}

function reply(doc: unknown, status = 200) {
  return {
    ok: status < 400,
    status,
    statusText: String(status),
    json: async () => doc,
  };
}

/**
 * Replace global fetch with a router over the captured service fixtures.
 * Responses are byte-for-byte what the real service returned for this
 * dataset, so DOM-level assertions are parity checks against the API.
 */
export function stubServiceFetch(): RecordedCall[] {
  const session = fixture("session.json");
  const sid = session.id as string;
  const calls: RecordedCall[] = [];

  const heatmaps: Record<string, string> = {
    c22: "heatmap-root.json",
    c20: "heatmap-a.json",
    c21: "heatmap-b.json",
  };

  globalThis.fetch = (async (input: any, init?: any) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    let body: any = null;
    if (typeof init?.body === "string") body = JSON.parse(init.body);
    calls.push({ url, method, body });

    if (url === "/sessions" && method === "POST") return reply(fixture("session.json"), 201);
    if (url === `/sessions/${sid}`) return reply(fixture("session.json"));
    if (url === `/sessions/${sid}/tree` && method === "GET") return reply(fixture("tree.json"));
    if (method === "POST" && url.endsWith("/expand")) return reply(fixture("tree-expanded.json"));

    let m = url.match(new RegExp(`^/sessions/${sid}/clusters/([^/]+)/heatmap$`));
    if (m) return reply(fixture(heatmaps[m[1]] ?? "heatmap-a.json"));
    m = url.match(new RegExp(`^/sessions/${sid}/clusters/([^/]+)/band$`));
    if (m) return reply(fixture("band-root.json"));
    m = url.match(new RegExp(`^/sessions/${sid}/clusters/([^/]+)$`));
    if (m) return reply(fixture(m[1] === "wedge0" ? "detail-leaf.json" : "detail-root.json"));

    if (url === `/sessions/${sid}/compare` && method === "POST") {
      if (body.a === body.b) return reply(fixture("compare-self.json"));
      if (body.mode === "counts") return reply(fixture("compare-ab-counts.json"));
      return reply(fixture("compare-ab.json"));
    }
    if (url === `/sessions/${sid}/query` && method === "POST") {
      if (body.type === "id") return reply(fixture("query-id.json"));
      if (JSON.stringify(body.columns) === "[[0],[1],[2],[1],[0]]") {
        return reply(fixture("query-abcba.json"));
      }
      return reply({ matched_ids: [], highlight_nodes: [], pattern_source: "sketch" });
    }
    m = url.match(new RegExp(`^/sessions/${sid}/series/([^/]+)$`));
    if (m) return reply(fixture("series-wedge0.json"));

    return reply({ error: `no fixture for ${method} ${url}` }, 404);
  }) as typeof fetch;

  return calls;
}

export function click(el: Element): void {
  el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

export function shiftClick(el: Element): void {
  el.dispatchEvent(new MouseEvent("click", { bubbles: true, shiftKey: true }));
}

export async function settle(rounds = 6): Promise<void> {
  for (let i = 0; i < rounds; i++) await new Promise((r) => setTimeout(r, 0));
}
