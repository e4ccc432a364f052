// Wire shapes of the analysis service. Field names mirror the JSON payloads
// exactly; the UI never derives counts or percentages on its own.

export interface DimensionDto {
  name: string;
  domain: string[];
}

export interface SummaryDto {
  n_records: number;
  n_dimensions: number;
  dimensions: DimensionDto[];
  frequencies: Record<string, Record<string, number>>;
}

export interface ChildDto {
  value: string;
  count: number;
}

export interface NodeViewDto {
  path: string[];
  depth: number;
  // null once every dimension on the path is bound
  dimension: string | null;
  count: number;
  children: ChildDto[];
  gaps: string[];
}

export interface ValueStatDto {
  value: string;
  confidence: number;
  count: number;
}

export interface RecommendationDto {
  match_count: number;
  recommendations: Record<string, ValueStatDto[]>;
  gaps: Record<string, string[]>;
  no_evidence: boolean;
}

export interface ErrorBodyDto {
  error: {
    code: string;
    message: string;
  };
}

export type Mode = "walk" | "filter";

export interface PathStep {
  dimension: string;
  value: string;
}

// One fully materialized view of the exploration. Snapshots of this type are
// what undo restores, so everything rendered must live here.
export interface ExplorationState {
  mode: Mode;
  path: PathStep[];
  bindings: Record<string, string>;
  view: NodeViewDto;
  recommendation: RecommendationDto;
  error: string | null;
}
