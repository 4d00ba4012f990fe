// Thin client for the session service. Every number the UI shows comes from
// these responses; the client never computes scores itself.

export interface ApiVerdict {
  image_id: number;
  verdict: 'novel' | 'similar';
  score: number;
  best_match_id: number | null;
  pair_url: string | null;
  elapsed_ms: number;
}

export interface ReportEntry {
  image_id: number;
  name: string;
  score: number;
  verdict: 'novel' | 'similar';
  best_match_id: number | null;
}

export interface Report {
  session_id: string;
  threshold: number;
  entries: ReportEntry[];
  novel_count: number;
  similar_count: number;
}

export type FetchLike = typeof fetch;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function fail(res: Response): Promise<never> {
  let detail = res.statusText;
  try {
    detail = (await res.json()).detail ?? detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(res.status, detail);
}

export class SessionClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch,
  ) {}

  sessionId: string | null = null;

  async createSession(threshold?: number): Promise<string> {
    const res = await this.fetchImpl(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: {'content-type': 'application/json'},
      body: JSON.stringify(threshold === undefined ? {} : {threshold}),
    });
    if (!res.ok) await fail(res);
    this.sessionId = (await res.json()).session_id as string;
    return this.sessionId;
  }

  async uploadImage(bytes: ArrayBuffer | Uint8Array, name: string): Promise<ApiVerdict> {
    if (!this.sessionId) throw new Error('no active session');
    const body = bytes instanceof Uint8Array
      ? bytes.slice().buffer as ArrayBuffer
      : bytes;
    const res = await this.fetchImpl(
      `${this.baseUrl}/sessions/${this.sessionId}/images`,
      {
        method: 'POST',
        headers: {'content-type': 'image/png', 'x-image-name': name},
        body,
      },
    );
    if (!res.ok) await fail(res);
    return (await res.json()) as ApiVerdict;
  }

  async fetchReport(threshold?: number): Promise<Report> {
    if (!this.sessionId) throw new Error('no active session');
    const query = threshold === undefined ? '' : `?threshold=${threshold}`;
    const res = await this.fetchImpl(
      `${this.baseUrl}/sessions/${this.sessionId}/report${query}`,
    );
    if (!res.ok) await fail(res);
    return (await res.json()) as Report;
  }

  pairUrl(imageId: number): string {
    return `${this.baseUrl}/sessions/${this.sessionId}/pairs/${imageId}`;
  }
}
