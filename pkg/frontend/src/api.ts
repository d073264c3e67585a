/** Typed client for the phonolab HTTP API.
 *
 * The UI renders only what these calls return; it never recomputes a
 * number the backend already knows.
 */

export interface Child {
  id: string;
  name: string;
  age_months: number;
  disorder: string;
  therapy_group: string;
}

export interface Evaluation {
  segment_id: string;
  expected_sound: string;
  probe: string;
  score: number;
}

export interface Segment {
  id: string;
  start: number;
  end: number;
  session_id: string;
  evaluation: Evaluation | null;
}

export interface Session {
  id: string;
  child_id: string;
  phase: string;
  audio_sha: string;
  sample_rate: number;
  sample_count: number;
  marker_count: number;
  segments: Segment[];
  created_at: number;
  warnings?: string[];
}

export interface RuleFiring {
  block: string;
  rule_id: number;
  degree: number;
  activation: number;
  consequents: [string, string][];
}

export interface InferenceTrace {
  outputs: Record<string, number>;
  firings: RuleFiring[];
  defaulted: string[];
}

export interface Suggestion {
  id: string;
  child_id: string;
  severity: number;
  progress: number;
  difficulty: number;
  dosage: number;
  trace: InferenceTrace;
  created_at: number;
}

export interface WeightChange {
  block: string;
  rule_id: number;
  old_weight: number;
  new_weight: number;
}

export interface OverrideResult {
  suggestion_id: string;
  changes: WeightChange[];
}

export interface KbSummary {
  name: string;
  inputs: string[];
  outputs: string[];
  rules: number;
}

export interface CohortCell {
  disorder: string;
  group: string;
  n: number;
  mean_pre: number | null;
  mean_post: number | null;
  delta: number | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
  } catch {
    /* non-JSON error body; keep the status line */
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(readonly base: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) throw await toApiError(response);
    return (await response.json()) as T;
  }

  private async requestText(path: string, init?: RequestInit): Promise<string> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) throw await toApiError(response);
    return await response.text();
  }

  listChildren(): Promise<Child[]> {
    return this.request("/children");
  }

  getChild(childId: string): Promise<Child> {
    return this.request(`/children/${childId}`);
  }

  createChild(child: Omit<Child, "id"> & { id?: string }): Promise<Child> {
    return this.request("/children", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(child),
    });
  }

  uploadSession(
    childId: string,
    phase: string,
    wav: ArrayBuffer | Uint8Array,
  ): Promise<Session> {
    const body = wav instanceof Uint8Array
      ? wav.slice().buffer
      : wav;
    return this.request(
      `/children/${childId}/sessions?phase=${encodeURIComponent(phase)}`,
      {
        method: "POST",
        headers: { "content-type": "audio/wav" },
        body,
      },
    );
  }

  listSessions(childId: string): Promise<Session[]> {
    return this.request(`/children/${childId}/sessions`);
  }

  getSession(sessionId: string): Promise<Session> {
    return this.request(`/sessions/${sessionId}`);
  }

  getSessionSegments(sessionId: string): Promise<Segment[]> {
    return this.request(`/sessions/${sessionId}/segments`);
  }

  sessionAudioUrl(sessionId: string): string {
    return `${this.base}/sessions/${sessionId}/audio`;
  }

  segmentAudioUrl(segmentId: string): string {
    return `${this.base}/segments/${segmentId}/audio`;
  }

  putEvaluation(
    segmentId: string,
    body: { expected_sound: string; probe: string; score: number },
  ): Promise<Evaluation> {
    return this.request(`/segments/${segmentId}/evaluation`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSuggestion(
    childId: string,
    inputs?: { severity: number; progress: number },
  ): Promise<Suggestion> {
    const query = inputs
      ? `?severity=${inputs.severity}&progress=${inputs.progress}`
      : "";
    return this.request(`/children/${childId}/suggestion${query}`);
  }

  postOverride(
    suggestionId: string,
    body: { difficulty?: number; dosage?: number },
  ): Promise<OverrideResult> {
    return this.request(`/suggestions/${suggestionId}/override`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getKb(): Promise<string> {
    return this.requestText("/kb");
  }

  putKb(text: string): Promise<KbSummary> {
    return this.request("/kb", {
      method: "PUT",
      headers: { "content-type": "text/plain; charset=utf-8" },
      body: text,
    });
  }

  getCohortReport(): Promise<{ cells: CohortCell[] }> {
    return this.request("/report/cohort");
  }
}
