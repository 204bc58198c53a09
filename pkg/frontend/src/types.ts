// Response shapes of the HTTP API, field for field. The client never
// derives numbers of its own; everything displayed comes from these.

export interface EvidenceRef {
  chunk_id: string;
  quote: string;
}

export interface FindingView {
  sub_id: string;
  domain: string;
  is_null: boolean;
  summary: string | null;
  evidence: EvidenceRef[];
  reason: string | null;
}

export interface AnswerSectionView {
  domain: string;
  narrative: string;
  findings: FindingView[];
}

export interface NullDomainNote {
  domain: string;
  note: string;
}

export interface ComposedAnswerView {
  query_id: string;
  sections: AnswerSectionView[];
  null_domain_notes: NullDomainNote[];
}

export interface PopulatedFieldView {
  value: unknown;
  chunk_ids: string[];
  origin_type: string;
}

export interface UnpopulatedField {
  field_id: string;
  reason: string;
}

export interface StructuredView {
  query_id: string;
  source_type_ids: string[];
  fields: Record<string, PopulatedFieldView>;
  unpopulated: UnpopulatedField[];
}

export interface RunSummary {
  run_id: string;
  query: string;
  molecule_id: string;
  status: string;
  started: number;
  finished: number | null;
}

export interface RunRecordView extends RunSummary {
  answer: ComposedAnswerView | null;
  structured: StructuredView | null;
  diagnostic: string | null;
}

export interface ChunkView {
  chunk_id: string;
  doc_id: string;
  section_path: string[];
  start_word: number;
  end_word: number;
  word_count: number;
  metadata_header: string;
  text: string;
}

export interface RubricCheck {
  check_id: string;
  text: string;
}

export interface Rubric {
  benchmark_query: string;
  question_type: string;
  title: string;
  question_template: string;
  positive_case: string;
  negative_case: string;
  label_guide: Record<string, string>;
  checks: RubricCheck[];
}

export interface MetricsCounts {
  tp: number;
  tn: number;
  fp: number;
  fn: number;
}

export interface MetricsView {
  benchmark_query: string;
  counts: MetricsCounts;
  total: number;
  accuracy: number | null;
  precision: number | null;
  recall: number | null;
  specificity: number | null;
  f1: number | null;
}

export interface AdjudicationSubmission {
  run_id: string;
  benchmark_query: string;
  molecule_id: string;
  label: string;
  adjudicator: string;
  error_type?: string | null;
}

export interface RunStartResponse {
  run_id: string;
  status: string;
}
