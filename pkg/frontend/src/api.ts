/** Typed client for the decision-service gateway.
 *
 * Every method resolves to the envelope payload exactly as the server sent
 * it; nothing here computes or reshapes numbers. A fetch-like function can
 * be injected for testing and for interception.
 */

import type {
  CreatedSessionPayload,
  Envelope,
  HotspotPayload,
  SensitivityPayload,
  SessionPayload,
} from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly field?: string;
  readonly revision: number | null;

  constructor(status: number, code: string, message: string, field?: string, revision: number | null = null) {
    super(message);
    this.status = status;
    this.code = code;
    this.field = field;
    this.revision = revision;
  }
}

export interface NewHierarchy {
  goal: string;
  criteria: string[] | { id: string; label?: string }[];
  alternatives: string[] | { id: string; label?: string }[];
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base = '', fetchImpl: FetchLike = (...args) => fetch(...args)) {
    this.base = base.replace(/\/$/, '');
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<Envelope<T>> {
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    const body = (await response.json()) as Envelope<T>;
    if (!response.ok) {
      const err = body.errors?.[0];
      throw new ApiError(
        response.status,
        err?.code ?? 'unknown',
        err?.message ?? `request failed with status ${response.status}`,
        err?.field,
        body.revision ?? null,
      );
    }
    return body;
  }

  createSession(hierarchy: NewHierarchy): Promise<Envelope<CreatedSessionPayload>> {
    return this.request('/sessions', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(hierarchy),
    });
  }

  getSession(sessionId: string): Promise<Envelope<SessionPayload>> {
    return this.request(`/sessions/${sessionId}`);
  }

  putJudgment(
    sessionId: string,
    edit: { matrix: string; a: string; b: string; value: string },
    ifMatch?: number,
  ): Promise<Envelope<SessionPayload>> {
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (ifMatch !== undefined) headers['If-Match'] = String(ifMatch);
    return this.request(`/sessions/${sessionId}/judgments`, {
      method: 'PUT',
      headers,
      body: JSON.stringify(edit),
    });
  }

  getHotspots(
    sessionId: string,
    matrix: string,
    k = 1,
  ): Promise<Envelope<{ matrix: string; hotspots: HotspotPayload[] }>> {
    const params = new URLSearchParams({ matrix, k: String(k) });
    return this.request(`/sessions/${sessionId}/hotspots?${params}`);
  }

  getSensitivity(
    sessionId: string,
    criterion: string,
    weight?: number,
  ): Promise<Envelope<SensitivityPayload>> {
    const params = new URLSearchParams({ criterion });
    if (weight !== undefined) params.set('weight', String(weight));
    return this.request(`/sessions/${sessionId}/sensitivity?${params}`);
  }

  importDocument(sessionId: string, document: string, ifMatch?: number): Promise<Envelope<SessionPayload>> {
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (ifMatch !== undefined) headers['If-Match'] = String(ifMatch);
    return this.request(`/sessions/${sessionId}/import`, {
      method: 'POST',
      headers,
      body: document,
    });
  }

  async exportDocument(sessionId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.base}/sessions/${sessionId}/export`);
    if (!response.ok) {
      const body = (await response.json()) as Envelope<unknown>;
      const err = body.errors?.[0];
      throw new ApiError(response.status, err?.code ?? 'unknown', err?.message ?? 'export failed');
    }
    return response.text();
  }
}
