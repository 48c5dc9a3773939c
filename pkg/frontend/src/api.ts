// Typed client for the session routes of the game service. The UI talks to
// the backend exclusively through this module: no file access, no shared
// state, just request/response plus the drainable event stream.

export type DisplayMode = "dice" | "heap" | "rect" | "disc";

export const DISPLAY_MODES: DisplayMode[] = ["dice", "heap", "rect", "disc"];

export interface SessionConfig {
  mode?: DisplayMode;
  domain?: number[];
  set_size?: number;
  trials_per_game?: number;
  score_boundaries?: [number, number];
  inter_trial_delay_ms?: number;
  long_press_threshold_ms?: number;
  background?: string;
  foreground?: string;
  bg_opacity?: string;
  learner?: string;
  trainer?: string;
  feedback_vocabulary?: Record<string, string>;
  seed?: number;
}

export interface PendingTrial {
  mode: DisplayMode;
  values: number[];
  displayed_at: string;
}

export interface SessionSnapshot {
  phase: "menu" | "in_game" | "settings" | "ended";
  mode: DisplayMode | null;
  trial_in_game: number;
  correct_in_game: number;
  test_no: number;
  trials_per_game: number;
  long_press_threshold_ms: number;
  domain: number[];
  pending: PendingTrial | null;
  seed: number;
}

export type SessionInput =
  | { type: "select_mode"; mode: DisplayMode }
  | { type: "touch_slot"; slot: number }
  | { type: "exit" }
  | { type: "long_press"; duration_ms: number }
  | { type: "continue" };

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class SessionClient {
  private sessionId: string | null = null;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  get id(): string | null {
    return this.sessionId;
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return resp;
  }

  async create(config: SessionConfig = {}): Promise<SessionSnapshot> {
    const resp = await this.request("/api/v1/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
    const body = await resp.json();
    this.sessionId = body.session_id;
    return body.snapshot;
  }

  private requireId(): string {
    if (this.sessionId === null) {
      throw new Error("no session created yet");
    }
    return this.sessionId;
  }

  async send(input: SessionInput): Promise<SessionSnapshot> {
    const resp = await this.request(
      `/api/v1/session/${this.requireId()}/input`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(input),
      },
    );
    return (await resp.json()).snapshot;
  }

  async snapshot(): Promise<SessionSnapshot> {
    const resp = await this.request(`/api/v1/session/${this.requireId()}`);
    return resp.json();
  }

  /** Drain the pending feedback events, one serialized event per line. */
  async drainEvents(): Promise<string[]> {
    const resp = await this.request(
      `/api/v1/session/${this.requireId()}/events`,
    );
    const text = await resp.text();
    return text === "" ? [] : text.replace(/\n$/, "").split("\n");
  }

  /** The session's trial log, exactly as the service renders it. */
  async sessionLog(format: "csv" | "txt" = "csv"): Promise<string> {
    const resp = await this.request(
      `/api/v1/session/${this.requireId()}/log?format=${format}`,
    );
    return resp.text();
  }
}
