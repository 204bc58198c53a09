import type { Api } from "./api.js";
import { el } from "./render.js";
import type { MetricsView } from "./types.js";

function fmt(value: number | null): string {
  return value === null ? "n/a" : value.toFixed(4);
}

/** Per-query adjudication tallies, straight from the metrics endpoint. */
export class MetricsBoard {
  constructor(
    private readonly container: HTMLElement,
    private readonly api: Api,
    private readonly queries: string[],
  ) {}

  async refresh(): Promise<void> {
    const rows: MetricsView[] = [];
    for (const query of this.queries) {
      rows.push(await this.api.getMetrics(query));
    }
    this.container.replaceChildren();
    this.container.append(el("h3", undefined, "adjudication metrics"));
    const table = el("table", "metrics-table");
    const head = el("tr");
    for (const name of ["query", "tp", "tn", "fp", "fn", "accuracy", "precision", "recall", "specificity", "f1"]) {
      head.append(el("th", undefined, name));
    }
    table.append(head);
    for (const row of rows) {
      const tr = el("tr", "metrics-row");
      tr.dataset.query = row.benchmark_query;
      tr.append(el("td", "metric-query", row.benchmark_query));
      tr.append(el("td", "metric-tp", String(row.counts.tp)));
      tr.append(el("td", "metric-tn", String(row.counts.tn)));
      tr.append(el("td", "metric-fp", String(row.counts.fp)));
      tr.append(el("td", "metric-fn", String(row.counts.fn)));
      tr.append(el("td", "metric-accuracy", fmt(row.accuracy)));
      tr.append(el("td", "metric-precision", fmt(row.precision)));
      tr.append(el("td", "metric-recall", fmt(row.recall)));
      tr.append(el("td", "metric-specificity", fmt(row.specificity)));
      tr.append(el("td", "metric-f1", fmt(row.f1)));
      table.append(tr);
    }
    this.container.append(table);
  }
}
