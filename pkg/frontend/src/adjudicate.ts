import { ApiError, type Api } from "./api.js";
import { el } from "./render.js";
import type { Rubric, RunRecordView } from "./types.js";

const LABELS = ["TP", "TN", "FP", "FN"] as const;

function renderChecklist(target: HTMLElement, rubric: Rubric | undefined): void {
  target.replaceChildren();
  if (!rubric) return;
  target.append(el("p", "rubric-title", rubric.title));
  target.append(el("p", "rubric-positive", `counts when: ${rubric.positive_case}`));
  target.append(el("p", "rubric-negative", `does not when: ${rubric.negative_case}`));
  const list = el("ul", "rubric-checks");
  for (const check of rubric.checks) {
    const item = el("li", "rubric-check");
    const box = el("input");
    box.type = "checkbox";
    box.id = `check-${check.check_id}`;
    const label = el("label", undefined, check.text);
    label.htmlFor = box.id;
    item.append(box, label);
    list.append(item);
  }
  target.append(list);
}

export function buildAdjudicationForm(
  container: HTMLElement,
  rubrics: Rubric[],
  run: RunRecordView,
  api: Api,
  onPosted: () => void,
): void {
  container.replaceChildren();
  container.append(el("h3", undefined, "adjudicate this answer"));
  const form = el("div", "adjudication-form");

  const querySelect = el("select", "benchmark-query");
  for (const rubric of rubrics) {
    const option = el("option", undefined, `${rubric.benchmark_query}: ${rubric.title}`);
    option.value = rubric.benchmark_query;
    querySelect.append(option);
  }
  form.append(labelled("benchmark query", querySelect));

  const checklist = el("div", "checklist");
  const syncChecklist = () =>
    renderChecklist(
      checklist,
      rubrics.find((r) => r.benchmark_query === querySelect.value),
    );
  querySelect.addEventListener("change", syncChecklist);
  syncChecklist();
  form.append(checklist);

  const labelRow = el("div", "label-row");
  for (const label of LABELS) {
    const radio = el("input");
    radio.type = "radio";
    radio.name = "verdict";
    radio.value = label;
    radio.id = `label-${label}`;
    const tag = el("label", "verdict-label", label);
    tag.htmlFor = radio.id;
    labelRow.append(radio, tag);
  }
  form.append(labelled("verdict", labelRow));

  const errorType = el("input", "error-type");
  errorType.placeholder = "error type, for FP or FN";
  form.append(labelled("error type", errorType));

  const molecule = el("input", "molecule-input");
  molecule.value = run.molecule_id;
  form.append(labelled("molecule", molecule));

  const adjudicator = el("input", "adjudicator-input");
  adjudicator.placeholder = "your name";
  form.append(labelled("adjudicator", adjudicator));

  const feedback = el("div", "form-error");
  const submit = el("button", "submit-adjudication", "submit");
  submit.type = "button";
  submit.addEventListener("click", async () => {
    const picked = form.querySelector<HTMLInputElement>("input[name=verdict]:checked");
    if (!picked) {
      feedback.textContent = "pick one of TP, TN, FP, FN";
      return;
    }
    if (!adjudicator.value.trim()) {
      feedback.textContent = "adjudicator is required";
      return;
    }
    try {
      await api.postAdjudication({
        run_id: run.run_id,
        benchmark_query: querySelect.value,
        molecule_id: molecule.value.trim(),
        label: picked.value,
        adjudicator: adjudicator.value.trim(),
        error_type: errorType.value.trim() || null,
      });
      feedback.textContent = "";
      feedback.classList.remove("failed");
      onPosted();
    } catch (error) {
      feedback.textContent = error instanceof ApiError ? error.message : String(error);
      feedback.classList.add("failed");
    }
  });
  form.append(submit, feedback);
  container.append(form);
}

function labelled(name: string, control: HTMLElement): HTMLElement {
  const row = el("div", "form-row");
  row.append(el("span", "form-label", name), control);
  return row;
}
