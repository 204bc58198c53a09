// In-memory backend double fed with JSON captured from the real service.
// Adjudication tallies follow the same duplicate-key policy as the server.

import { ApiError, type Api } from "../src/api.js";
import type {
  AdjudicationSubmission,
  ChunkView,
  MetricsView,
  Rubric,
  RunRecordView,
  RunStartResponse,
  RunSummary,
} from "../src/types.js";
import fixtures from "./fixtures.json";

const LABELS = new Set(["TP", "TN", "FP", "FN"]);

export class FakeApi implements Api {
  readonly records: AdjudicationSubmission[] = [];
  private readonly runs: Record<string, RunRecordView>;
  private readonly chunks: Record<string, ChunkView>;
  private readonly rubrics: Rubric[];

  constructor() {
    this.runs = fixtures.runs as unknown as Record<string, RunRecordView>;
    this.chunks = fixtures.chunks as unknown as Record<string, ChunkView>;
    this.rubrics = fixtures.rubrics as unknown as Rubric[];
  }

  async listRuns(): Promise<RunSummary[]> {
    return Object.values(this.runs).map((run) => ({
      run_id: run.run_id,
      query: run.query,
      molecule_id: run.molecule_id,
      status: run.status,
      started: run.started,
      finished: run.finished,
    }));
  }

  async getRun(runId: string): Promise<RunRecordView> {
    const run = this.runs[runId];
    if (!run) throw new ApiError(404, `run ${runId}`);
    return run;
  }

  async getChunk(chunkId: string): Promise<ChunkView> {
    const chunk = this.chunks[chunkId];
    if (!chunk) throw new ApiError(404, `chunk ${chunkId}`);
    return chunk;
  }

  async getRubrics(): Promise<Rubric[]> {
    return this.rubrics;
  }

  async getMetrics(benchmarkQuery: string): Promise<MetricsView> {
    const counts = { tp: 0, tn: 0, fp: 0, fn: 0 };
    for (const record of this.records) {
      if (record.benchmark_query !== benchmarkQuery) continue;
      counts[record.label.toLowerCase() as keyof typeof counts] += 1;
    }
    const total = counts.tp + counts.tn + counts.fp + counts.fn;
    const ratio = (num: number, den: number) => (den === 0 ? null : num / den);
    return {
      benchmark_query: benchmarkQuery,
      counts,
      total,
      accuracy: ratio(counts.tp + counts.tn, total),
      precision: ratio(counts.tp, counts.tp + counts.fp),
      recall: ratio(counts.tp, counts.tp + counts.fn),
      specificity: ratio(counts.tn, counts.tn + counts.fp),
      f1: null,
    };
  }

  async startRun(query: string, moleculeId: string): Promise<RunStartResponse> {
    if (!query || !moleculeId) throw new ApiError(400, "query and molecule_id are required");
    throw new ApiError(409, "fixture backend does not execute new runs");
  }

  async postAdjudication(form: AdjudicationSubmission): Promise<unknown> {
    if (!this.runs[form.run_id]) throw new ApiError(404, `run ${form.run_id}`);
    if (!LABELS.has(form.label)) throw new ApiError(400, `label must be one of TP, TN, FP, FN`);
    if (!form.adjudicator) throw new ApiError(400, "adjudicator is required");
    if (!form.molecule_id) throw new ApiError(400, "molecule_id is required");
    const clash = this.records.some(
      (r) =>
        r.benchmark_query === form.benchmark_query &&
        r.molecule_id === form.molecule_id &&
        r.adjudicator === form.adjudicator,
    );
    if (clash) {
      throw new ApiError(
        409,
        `duplicate adjudication for (${form.benchmark_query}, ${form.molecule_id}, ${form.adjudicator})`,
      );
    }
    this.records.push({ ...form });
    return { ...form };
  }
}
