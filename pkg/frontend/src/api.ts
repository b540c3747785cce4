// HTTP client for the play service. Streaming uses fetch + manual SSE
// parsing so the same code runs in the browser and under node (tests).

import type {
  CreateSessionResponse,
  EventBody,
  EventResponse,
  Level,
  ScoreDoc,
  StreamMessage,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body.detail) detail = String(body.detail);
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export interface Client {
  createSession(level: Level, seed?: number): Promise<CreateSessionResponse>;
  postEvent(id: string, body: EventBody): Promise<EventResponse>;
  getScore(id: string): Promise<ScoreDoc>;
  fetchLog(id: string): Promise<string>;
  stream(
    id: string,
    onMessage: (message: StreamMessage) => void,
    signal?: AbortSignal,
  ): Promise<void>;
}

export function createClient(baseUrl = ""): Client {
  return {
    createSession(level, seed) {
      const body: { level: Level; seed?: number } = { level };
      if (seed !== undefined) body.seed = seed;
      return request<CreateSessionResponse>(`${baseUrl}/sessions`, {
        method: "POST",
        body: JSON.stringify(body),
      });
    },

    postEvent(id, body) {
      return request<EventResponse>(`${baseUrl}/sessions/${id}/events`, {
        method: "POST",
        body: JSON.stringify(body),
      });
    },

    async getScore(id) {
      const doc = await request<{ score: ScoreDoc }>(`${baseUrl}/sessions/${id}/score`);
      return doc.score;
    },

    async fetchLog(id) {
      const response = await fetch(`${baseUrl}/sessions/${id}/log`);
      if (!response.ok) throw new ApiError(response.status, response.statusText);
      return response.text();
    },

    async stream(id, onMessage, signal) {
      const response = await fetch(`${baseUrl}/sessions/${id}/stream`, { signal });
      if (!response.ok || !response.body) {
        throw new ApiError(response.status, "stream unavailable");
      }
      const reader = response.body.getReader();
      const decoder = new TextDecoder();
      let buffer = "";
      for (;;) {
        const { value, done } = await reader.read();
        if (done) break;
        buffer += decoder.decode(value, { stream: true });
        for (;;) {
          const cut = buffer.indexOf("\n\n");
          if (cut < 0) break;
          const chunk = buffer.slice(0, cut);
          buffer = buffer.slice(cut + 2);
          for (const line of chunk.split("\n")) {
            if (line.startsWith("data:")) {
              onMessage(JSON.parse(line.slice(5)) as StreamMessage);
            }
          }
        }
      }
    },
  };
}
