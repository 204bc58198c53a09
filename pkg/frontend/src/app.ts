import { buildAdjudicationForm } from "./adjudicate.js";
import { ApiError, type Api } from "./api.js";
import { MetricsBoard } from "./metrics.js";
import { el, renderChunkPanel, renderRun } from "./render.js";
import type { Rubric } from "./types.js";

const POLL_MS = 500;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class App {
  private banner!: HTMLElement;
  private runsList!: HTMLElement;
  private runView!: HTMLElement;
  private chunkPanel!: HTMLElement;
  private adjudication!: HTMLElement;
  private metricsPane!: HTMLElement;
  private metrics!: MetricsBoard;
  private rubrics: Rubric[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly api: Api,
  ) {}

  async init(): Promise<void> {
    this.root.replaceChildren();
    this.banner = el("div", "error-banner");
    this.banner.hidden = true;
    this.root.append(this.banner);

    this.root.append(this.buildSubmitForm());
    this.runsList = el("div", "runs-list");
    this.runView = el("div", "run-view");
    this.chunkPanel = el("div", "chunk-panel");
    this.adjudication = el("div", "adjudication");
    this.metricsPane = el("div", "metrics");
    this.root.append(this.runsList, this.runView, this.chunkPanel, this.adjudication, this.metricsPane);

    this.rubrics = await this.api.getRubrics();
    this.metrics = new MetricsBoard(
      this.metricsPane,
      this.api,
      this.rubrics.map((r) => r.benchmark_query),
    );
    await this.refreshRuns();
    await this.metrics.refresh();
  }

  private buildSubmitForm(): HTMLElement {
    const bar = el("div", "submit-bar");
    const query = el("input", "query-input");
    query.placeholder = "ask about a molecule";
    const molecule = el("input", "molecule-id-input");
    molecule.placeholder = "molecule id";
    const go = el("button", "submit-run", "run");
    go.type = "button";
    go.addEventListener("click", () => {
      void this.submit(query.value.trim(), molecule.value.trim());
    });
    bar.append(query, molecule, go);
    return bar;
  }

  private async submit(query: string, moleculeId: string): Promise<void> {
    if (!query || !moleculeId) {
      this.showError("query and molecule id are both required");
      return;
    }
    try {
      const started = await this.api.startRun(query, moleculeId);
      this.clearError();
      await this.watch(started.run_id);
    } catch (error) {
      this.showError(describe(error));
    }
  }

  /** Poll until the run settles, rendering on every status change. */
  private async watch(runId: string): Promise<void> {
    for (;;) {
      const run = await this.api.getRun(runId);
      if (run.status !== "running") {
        await this.refreshRuns();
        await this.openRun(runId);
        return;
      }
      await sleep(POLL_MS);
    }
  }

  async refreshRuns(): Promise<void> {
    const runs = await this.api.listRuns();
    this.runsList.replaceChildren();
    for (const summary of runs) {
      const entry = el("button", "run-entry", `${summary.run_id} [${summary.status}] ${summary.query}`);
      entry.type = "button";
      entry.dataset.runId = summary.run_id;
      entry.addEventListener("click", () => void this.openRun(summary.run_id));
      this.runsList.append(entry);
    }
  }

  async openRun(runId: string): Promise<void> {
    let run;
    try {
      run = await this.api.getRun(runId);
    } catch (error) {
      this.showError(describe(error));
      return;
    }
    this.clearError();
    this.chunkPanel.replaceChildren();
    renderRun(this.runView, run, {
      onChipClick: (chunkId, quote) => void this.showChunk(chunkId, quote),
    });
    buildAdjudicationForm(this.adjudication, this.rubrics, run, this.api, () => {
      void this.metrics.refresh();
    });
  }

  private async showChunk(chunkId: string, quote: string): Promise<void> {
    try {
      const chunk = await this.api.getChunk(chunkId);
      this.clearError();
      renderChunkPanel(this.chunkPanel, chunk, quote);
    } catch (error) {
      this.showError(describe(error));
    }
  }

  private showError(message: string): void {
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private clearError(): void {
    this.banner.textContent = "";
    this.banner.hidden = true;
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.status}: ${error.message}`;
  return String(error);
}

export async function mountApp(root: HTMLElement, api: Api): Promise<App> {
  const app = new App(root, api);
  await app.init();
  return app;
}
