/** Typed client for the seqval HTTP/JSON service. */

export interface SessionConfig {
  board_size?: number;
  pool_size?: number;
  bins_k?: number;
  epsilon?: number;
  scoring?: "log" | "indicator";
  seed?: number;
  general_seed?: number;
  general_length?: number;
  freeze_model?: boolean;
}

export interface SessionInfo {
  id: string;
  config: Required<SessionConfig>;
  sequence?: string[];
}

export interface HeatmapCell {
  field: string;
  col: number;
  row: number;
  value: number;
  rank: number;
}

export interface TopEntry {
  field: string;
  value: number;
  rank: number;
}

export interface Heatmap {
  session: string;
  board_size: number;
  sequence: string[];
  cells: HeatmapCell[];
  top: TopEntry[];
}

export interface ServiceError {
  error: string;
  detail: string;
}

/** Raised for non-2xx responses that carry a service error body. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, detail: string) {
    super(detail);
    this.status = status;
    this.code = code;
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl: FetchLike = fetch) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchImpl(`${this.base}${path}`, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (resp.status === 204) {
      return undefined as T;
    }
    const data = (await resp.json()) as T | ServiceError;
    if (!resp.ok) {
      const err = data as ServiceError;
      throw new ApiError(resp.status, err.error ?? "error", err.detail ?? resp.statusText);
    }
    return data as T;
  }

  createSession(config: SessionConfig = {}): Promise<SessionInfo> {
    return this.request<SessionInfo>("POST", "/sessions", config);
  }

  getSession(id: string): Promise<SessionInfo> {
    return this.request<SessionInfo>("GET", `/sessions/${id}`);
  }

  setSequence(id: string, positions: string[]): Promise<Heatmap> {
    return this.request<Heatmap>("PUT", `/sessions/${id}/sequence`, { positions });
  }

  accept(id: string, field: string): Promise<Heatmap> {
    return this.request<Heatmap>("POST", `/sessions/${id}/accept`, { field });
  }

  heatmap(id: string, top = 5): Promise<Heatmap> {
    return this.request<Heatmap>("GET", `/sessions/${id}/heatmap?top=${top}`);
  }

  deleteSession(id: string): Promise<void> {
    return this.request<void>("DELETE", `/sessions/${id}`);
  }
}
