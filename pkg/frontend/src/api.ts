import type {
  AdjudicationSubmission,
  ChunkView,
  MetricsView,
  Rubric,
  RunRecordView,
  RunStartResponse,
  RunSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** What the app needs from the backend. Tests inject a fake. */
export interface Api {
  listRuns(): Promise<RunSummary[]>;
  getRun(runId: string): Promise<RunRecordView>;
  getChunk(chunkId: string): Promise<ChunkView>;
  getRubrics(): Promise<Rubric[]>;
  getMetrics(benchmarkQuery: string): Promise<MetricsView>;
  startRun(query: string, moleculeId: string): Promise<RunStartResponse>;
  postAdjudication(form: AdjudicationSubmission): Promise<unknown>;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient implements Api {
  constructor(
    private readonly doFetch: FetchLike = (input, init) => fetch(input, init),
    private readonly base: string = "",
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.doFetch(this.base + path, init);
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      const detail =
        body !== null && typeof body === "object" && "detail" in body
          ? String((body as { detail: unknown }).detail)
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return body as T;
  }

  async listRuns(): Promise<RunSummary[]> {
    const data = await this.request<{ runs: RunSummary[] }>("/runs");
    return data.runs;
  }

  getRun(runId: string): Promise<RunRecordView> {
    return this.request(`/runs/${encodeURIComponent(runId)}`);
  }

  getChunk(chunkId: string): Promise<ChunkView> {
    return this.request(`/chunks/${encodeURIComponent(chunkId)}`);
  }

  async getRubrics(): Promise<Rubric[]> {
    const data = await this.request<{ rubrics: Rubric[] }>("/rubrics");
    return data.rubrics;
  }

  getMetrics(benchmarkQuery: string): Promise<MetricsView> {
    return this.request(`/metrics/${encodeURIComponent(benchmarkQuery)}`);
  }

  startRun(query: string, moleculeId: string): Promise<RunStartResponse> {
    return this.request("/runs", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ query, molecule_id: moleculeId }),
    });
  }

  postAdjudication(form: AdjudicationSubmission): Promise<unknown> {
    return this.request("/adjudications", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(form),
    });
  }
}
