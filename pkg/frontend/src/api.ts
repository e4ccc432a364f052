// Thin typed client over the analysis service. fetch is injectable so tests
// can replay a recorded transcript instead of talking to a live server.

import type { NodeViewDto, RecommendationDto, SummaryDto } from "./types.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

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

async function readError(response: Response): Promise<ApiError> {
  let code = "internal";
  let message = `request failed with status ${response.status}`;
  try {
    const body = await response.json();
    if (body && body.error) {
      code = String(body.error.code ?? code);
      message = String(body.error.message ?? message);
    }
  } catch {
    // non-JSON body: keep the generic message
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.base + path);
    if (!response.ok) throw await readError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const response = await this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (!response.ok) throw await readError(response);
    return (await response.json()) as T;
  }

  summary(): Promise<SummaryDto> {
    return this.get("/api/dataset/summary");
  }

  descend(path: string[]): Promise<NodeViewDto> {
    return this.post("/api/tree/descend", { path });
  }

  recommend(bindings: Record<string, string>): Promise<RecommendationDto> {
    return this.post("/api/recommend", { bindings });
  }
}
