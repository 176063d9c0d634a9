/** Wire types mirroring the gateway's JSON payloads. */

export interface Envelope<T> {
  revision: number | null;
  payload: T | null;
  errors: ApiErrorBody[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field?: string;
}

export interface ElementInfo {
  id: string;
  label: string;
}

export interface PriorityVectorPayload {
  ids: string[];
  weights: number[];
}

export interface ConsistencyPayload {
  lambda_max: number;
  ci: number;
  cr: number | null;
  random_index: number | null;
  verdict: 'consistent' | 'inconsistent' | 'undefined_for_dimension';
}

export interface RankedEntry {
  id: string;
  score: number;
  position: number;
  tied: boolean;
}

export interface SynthesisPayload {
  alternative_ids: string[];
  scores: number[];
  ranking: RankedEntry[];
  criteria_weights: PriorityVectorPayload;
  per_criterion_scores: number[][];
}

export interface MatrixStatusPayload {
  size: number;
  entered: number;
  required: number;
  completeness: number;
  complete: boolean;
  pending: [string, string][];
}

export interface SnapshotPayload {
  revision: number;
  complete: boolean;
  statuses: Record<string, MatrixStatusPayload>;
  criteria_priorities: PriorityVectorPayload | null;
  alternative_priorities: Record<string, PriorityVectorPayload>;
  consistency: Record<string, ConsistencyPayload>;
  synthesis: SynthesisPayload | null;
}

export interface JudgmentPair {
  a: string;
  b: string;
  value: string;
}

export interface SessionPayload {
  goal: string;
  criteria: ElementInfo[];
  alternatives: ElementInfo[];
  judgments: Record<string, JudgmentPair[]>;
  snapshot: SnapshotPayload;
}

export interface CreatedSessionPayload extends SessionPayload {
  session_id: string;
}

export interface HotspotPayload {
  triad: [string, string, string];
  deviation: number;
  cell: [string, string];
  suggested: string;
}

export interface SensitivityPayload {
  criterion: string;
  current_weight: number;
  winner: string;
  stable_low: number;
  stable_high: number;
  crossover_weight: number | null;
  challenger: string | null;
  scores_at?: {
    weight: number;
    synthesis: SynthesisPayload;
  };
}

export type ViewName = 'editor' | 'results' | 'sensitivity';

export const CRITERIA_MATRIX_ID = 'criteria';
