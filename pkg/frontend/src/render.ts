import type { ChunkView, FindingView, RunRecordView } from "./types.js";

export interface RunViewHandlers {
  onChipClick(chunkId: string, quote: string): void;
}

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function chip(chunkId: string, quote: string, handlers: RunViewHandlers): HTMLButtonElement {
  const button = el("button", "chip", chunkId);
  button.type = "button";
  button.dataset.chunkId = chunkId;
  button.dataset.quote = quote;
  button.title = quote;
  button.addEventListener("click", () => handlers.onChipClick(chunkId, quote));
  return button;
}

function renderFinding(finding: FindingView, handlers: RunViewHandlers): HTMLLIElement {
  const item = el("li", "finding");
  if (finding.is_null) {
    item.classList.add("finding-null");
    item.append(el("span", "finding-reason", finding.reason ?? "no evidence"));
    return item;
  }
  item.append(el("span", "finding-summary", finding.summary ?? ""));
  const chips = el("span", "chips");
  for (const ref of finding.evidence) {
    chips.append(chip(ref.chunk_id, ref.quote, handlers));
  }
  item.append(chips);
  return item;
}

function formatValue(value: unknown): string {
  if (Array.isArray(value)) return value.map(String).join(", ");
  if (typeof value === "boolean") return value ? "yes" : "no";
  return String(value);
}

export function renderRun(
  container: HTMLElement,
  run: RunRecordView,
  handlers: RunViewHandlers,
): void {
  container.replaceChildren();

  const header = el("div", "run-header");
  header.append(el("h2", "run-query", run.query));
  header.append(el("span", "run-molecule", run.molecule_id));
  header.append(el("span", `run-status status-${run.status}`, run.status));
  container.append(header);

  if (run.status === "failed") {
    container.append(el("div", "error-banner", run.diagnostic ?? "run failed"));
    return;
  }
  if (!run.answer || !run.structured) {
    container.append(el("p", "run-pending", "still running"));
    return;
  }

  for (const note of run.answer.null_domain_notes) {
    container.append(el("div", "null-note", `${note.domain}: ${note.note}`));
  }

  for (const section of run.answer.sections) {
    const block = el("section", "domain-section");
    block.dataset.domain = section.domain;
    block.append(el("h3", "domain-name", section.domain));
    block.append(el("p", "narrative", section.narrative));
    const list = el("ul", "findings");
    for (const finding of section.findings) {
      list.append(renderFinding(finding, handlers));
    }
    block.append(list);
    container.append(block);
  }

  const structured = el("div", "structured");
  structured.append(el("h3", undefined, "structured answer"));
  const table = el("table", "fields");
  for (const [fieldId, field] of Object.entries(run.structured.fields)) {
    const row = el("tr", "field-row");
    row.dataset.fieldId = fieldId;
    row.append(el("td", "field-id", fieldId));
    row.append(el("td", "field-value", formatValue(field.value)));
    const cell = el("td", "field-chips");
    for (const chunkId of field.chunk_ids) {
      cell.append(chip(chunkId, "", handlers));
    }
    row.append(cell);
    table.append(row);
  }
  for (const missing of run.structured.unpopulated) {
    const row = el("tr", "field-row unpopulated");
    row.dataset.fieldId = missing.field_id;
    row.append(el("td", "field-id", missing.field_id));
    row.append(el("td", "field-reason", missing.reason));
    row.append(el("td", "field-chips"));
    table.append(row);
  }
  structured.append(table);
  container.append(structured);
}

export function renderChunkPanel(container: HTMLElement, chunk: ChunkView, quote: string): void {
  container.replaceChildren();
  container.append(el("div", "chunk-header", chunk.metadata_header));
  container.append(el("div", "chunk-id", chunk.chunk_id));
  const body = el("pre", "chunk-text");
  const at = quote ? chunk.text.indexOf(quote) : -1;
  if (at < 0) {
    body.textContent = chunk.text;
  } else {
    // highlight the cited sentence; textContent stays equal to chunk.text
    body.append(document.createTextNode(chunk.text.slice(0, at)));
    const mark = el("mark", "quote", quote);
    body.append(mark);
    body.append(document.createTextNode(chunk.text.slice(at + quote.length)));
  }
  container.append(body);
}
