// Typed client for the fiqhkit service API. The UI renders only what
// these calls return; no verdict is ever computed client-side.

export interface AdviceDoc {
  kind: string;
  message: string;
  offending_action: string | null;
  expected_action: string | null;
}

export interface SessionDoc {
  session_id: string;
  automaton: string;
  status: string;
  ordinal: number;
  credited: string[];
  missing: string[];
  expected_action: string | null;
  enabled_actions: string[];
  advice: AdviceDoc | null;
  trace?: string[];
}

export interface ActionInfo {
  id: string;
  label: string;
  obligatory: boolean;
}

export interface InvalidationEventInfo {
  id: string;
  label: string;
  policy: string;
}

export interface AutomatonInfo {
  id: string;
  mode: string;
  actions: ActionInfo[];
  invalidation_events: InvalidationEventInfo[];
}

export interface ValueInfo {
  id: string;
  label: string;
}

export interface AttributeInfo {
  name: string;
  element: string;
  values: ValueInfo[];
}

export interface SpaceInfo {
  id: string;
  attributes: AttributeInfo[];
}

export interface QueryResponse {
  status: string;
  verdict: string | null;
  matched_rules: string[];
  explanation: string[];
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(readonly baseUrl: string, fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(`service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = `${response.status} ${response.statusText}`;
      try {
        const body = await response.json();
        if (body && body.detail) {
          detail =
            typeof body.detail === "string"
              ? body.detail
              : JSON.stringify(body.detail);
        }
      } catch {
        // keep the status text
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  listAutomata(): Promise<AutomatonInfo[]> {
    return this.request<AutomatonInfo[]>("/automata");
  }

  listSpaces(): Promise<SpaceInfo[]> {
    return this.request<SpaceInfo[]>("/spaces");
  }

  createSession(automaton: string): Promise<SessionDoc> {
    return this.post<SessionDoc>("/sessions", { automaton });
  }

  postEvent(sessionId: string, event: string, ordinal?: number): Promise<SessionDoc> {
    return this.post<SessionDoc>(`/sessions/${sessionId}/events`, {
      event,
      ...(ordinal === undefined ? {} : { ordinal }),
    });
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.request<SessionDoc>(`/sessions/${sessionId}`);
  }

  postQuery(space: string, bindings: Record<string, string>): Promise<QueryResponse> {
    return this.post<QueryResponse>("/query", { space, bindings });
  }
}
