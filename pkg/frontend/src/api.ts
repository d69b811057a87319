// Typed client for the sdkit session service. The console renders service
// responses verbatim; nothing in here computes a utility, core, or interval.

export interface RungPayload {
  level: number;
  core: string[];
  strict_pairs: [string, string][];
}

export interface LadderPayload {
  schema_version: number;
  rungs: RungPayload[];
}

export interface MissingInfoPayload {
  mean: number;
  max: number;
  sum: number;
}

// One loose report shape for every session kind; the console branches on
// which fields are present.
export interface Report {
  schema_version: number;
  session: string;
  kind: string;
  alternatives: string[];
  weights: Record<string, number>;
  bookmarks: Record<string, number>;
  warnings?: string[];
  // degree-matrix and criteria sessions
  utilities?: Record<string, number>;
  ranking?: string[][];
  ladder?: RungPayload[];
  phi_star?: number;
  // panels
  copeland?: { scores: Record<string, number>; ranking: string[][] };
  level0?: { core: string[] };
  n_experts?: number;
  // partial matrices and abstention panels
  complete?: boolean;
  intervals?: Record<string, [number, number]>;
  missing_mass?: Record<string, number>;
  missing_info?: MissingInfoPayload;
  interval_order?: { pairs: [string, string][]; core: string[] };
  suggestion?: [string, string] | null;
}

export interface SuggestionPayload {
  schema_version: number;
  pair: [string, string] | null;
}

export interface BookmarksPayload {
  schema_version: number;
  bookmarks: Record<string, number>;
}

/** The service answered with an error status; message comes back verbatim. */
export class ServiceError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ServiceError";
  }
}

/** The service could not be reached at all; the UI shows a retry banner. */
export class ConnectionError extends Error {
  constructor(readonly reason: unknown) {
    super("service unreachable");
    this.name = "ConnectionError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ConnectionError(err);
  }
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : `request failed with status ${response.status}`;
    throw new ServiceError(response.status, message);
  }
  return body as T;
}

export class SessionApi {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  /** Create a session from any load-format document (object) or CSV wrapper. */
  async createSession(payload: unknown): Promise<string> {
    const result = await request<{ id: string }>(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    return result.id;
  }

  getReport(sessionId: string): Promise<Report> {
    return request<Report>(this.url(`/sessions/${sessionId}/report`));
  }

  getLadder(sessionId: string): Promise<LadderPayload> {
    return request<LadderPayload>(this.url(`/sessions/${sessionId}/ladder`));
  }

  getSuggestion(sessionId: string): Promise<SuggestionPayload> {
    return request<SuggestionPayload>(this.url(`/sessions/${sessionId}/suggestion`));
  }

  /** Returns the refreshed report. */
  postRefinement(sessionId: string, x: string, y: string, value: number): Promise<Report> {
    return request<Report>(this.url(`/sessions/${sessionId}/refinements`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ x, y, value }),
    });
  }

  postBookmark(sessionId: string, name: string, level: number): Promise<BookmarksPayload> {
    return request<BookmarksPayload>(this.url(`/sessions/${sessionId}/bookmarks`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ name, level }),
    });
  }
}
