/** Builders for server payloads used by the unit tests. Values are arbitrary
 * but shaped exactly like the gateway's responses; the UI must treat them as
 * authoritative either way. */

import type {
  Envelope,
  SessionPayload,
  SnapshotPayload,
  SynthesisPayload,
} from '../src/types';

export function makeSynthesis(overrides: Partial<SynthesisPayload> = {}): SynthesisPayload {
  return {
    alternative_ids: ['A', 'B'],
    scores: [0.7, 0.3],
    ranking: [
      { id: 'A', score: 0.7, position: 1, tied: false },
      { id: 'B', score: 0.3, position: 2, tied: false },
    ],
    criteria_weights: { ids: ['c1', 'c2'], weights: [0.75, 0.25] },
    per_criterion_scores: [
      [0.8, 0.4],
      [0.2, 0.6],
    ],
    ...overrides,
  };
}

export function makeSnapshot(overrides: Partial<SnapshotPayload> = {}): SnapshotPayload {
  return {
    revision: 3,
    complete: true,
    statuses: {
      criteria: { size: 2, entered: 1, required: 1, completeness: 1, complete: true, pending: [] },
      c1: { size: 2, entered: 1, required: 1, completeness: 1, complete: true, pending: [] },
      c2: { size: 2, entered: 1, required: 1, completeness: 1, complete: true, pending: [] },
    },
    criteria_priorities: { ids: ['c1', 'c2'], weights: [0.75, 0.25] },
    alternative_priorities: {
      c1: { ids: ['A', 'B'], weights: [0.8, 0.2] },
      c2: { ids: ['A', 'B'], weights: [0.4, 0.6] },
    },
    consistency: {
      criteria: { lambda_max: 2, ci: 0, cr: 0, random_index: 0, verdict: 'consistent' },
      c1: { lambda_max: 2, ci: 0, cr: 0, random_index: 0, verdict: 'consistent' },
      c2: { lambda_max: 2, ci: 0, cr: 0, random_index: 0, verdict: 'consistent' },
    },
    synthesis: makeSynthesis(),
    ...overrides,
  };
}

export function makeSession(overrides: Partial<SessionPayload> = {}): SessionPayload {
  return {
    goal: 'pick one',
    criteria: [
      { id: 'c1', label: 'First criterion' },
      { id: 'c2', label: 'Second criterion' },
    ],
    alternatives: [
      { id: 'A', label: 'Option A' },
      { id: 'B', label: 'Option B' },
    ],
    judgments: {
      criteria: [{ a: 'c1', b: 'c2', value: '3' }],
      c1: [{ a: 'A', b: 'B', value: '5' }],
      c2: [{ a: 'A', b: 'B', value: '1/2' }],
    },
    snapshot: makeSnapshot(),
    ...overrides,
  };
}

export function envelope<T>(payload: T, revision: number | null = 0): Envelope<T> {
  return { revision, payload, errors: [] };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}
