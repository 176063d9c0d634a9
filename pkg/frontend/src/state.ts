/** Client-side session state: a mirror of the latest server payload plus
 * pure UI concerns (selected view, cell being edited, banners).
 *
 * The store never derives decision numbers itself; views must read weights,
 * scores, and consistency straight from `session.snapshot`.
 */

import type { SessionPayload, ViewName } from './types';

export interface PendingEdit {
  matrix: string;
  a: string;
  b: string;
  value: string;
}

export interface Banner {
  kind: 'error' | 'conflict' | 'info';
  text: string;
  retry?: PendingEdit;
}

export interface UiState {
  sessionId: string | null;
  session: SessionPayload | null;
  view: ViewName;
  selectedMatrix: string;
  selectedCriterion: string | null;
  pendingEdit: PendingEdit | null;
  cellError: { matrix: string; a: string; b: string; message: string } | null;
  banner: Banner | null;
}

type Listener = (state: UiState) => void;

export class Store {
  private state: UiState = {
    sessionId: null,
    session: null,
    view: 'editor',
    selectedMatrix: 'criteria',
    selectedCriterion: null,
    pendingEdit: null,
    cellError: null,
    banner: null,
  };
  private listeners: Listener[] = [];

  get(): UiState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  update(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    this.emit();
  }

  /** Adopt a fresh server payload; clears stale edit errors. */
  applyServer(sessionId: string, payload: SessionPayload): void {
    this.update({
      sessionId,
      session: payload,
      pendingEdit: null,
      cellError: null,
    });
  }

  /** The revision every rendered number must correspond to. */
  revision(): number | null {
    return this.state.session?.snapshot.revision ?? null;
  }
}
