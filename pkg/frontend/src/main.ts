/** Application shell: session bootstrap, view switching, and the edit loop.
 *
 * The client is deliberately thin. Every mutation round-trips through the
 * gateway and the whole UI re-renders from the response payload, so the
 * numbers on screen are always the server's.
 */

import { ApiClient, ApiError } from './api';
import { Store } from './state';
import type { PendingEdit } from './state';
import type { HotspotPayload, SensitivityPayload, SessionPayload, ViewName } from './types';
import { matrixElements, renderMatrixEditor } from './views/matrixEditor';
import { renderResults } from './views/results';
import { renderSensitivity } from './views/sensitivity';

export class App {
  readonly store = new Store();
  private hotspot: HotspotPayload | null = null;
  private sensitivity: SensitivityPayload | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.store.subscribe(() => this.render());
  }

  start(): void {
    this.render();
  }

  private async guard<T>(work: () => Promise<T>): Promise<T | undefined> {
    try {
      return await work();
    } catch (error) {
      if (error instanceof ApiError) {
        this.store.update({ banner: { kind: 'error', text: error.message } });
        return undefined;
      }
      this.store.update({ banner: { kind: 'error', text: String(error) } });
      return undefined;
    }
  }

  async createSession(goal: string, criteria: string[], alternatives: string[]): Promise<void> {
    await this.guard(async () => {
      const envelope = await this.api.createSession({ goal, criteria, alternatives });
      const payload = envelope.payload!;
      this.store.applyServer(payload.session_id, payload);
    });
  }

  async importDocument(text: string): Promise<void> {
    await this.guard(async () => {
      let sessionId = this.store.get().sessionId;
      if (!sessionId) {
        // any valid placeholder hierarchy works; import replaces it wholesale
        const created = await this.api.createSession({
          goal: 'imported',
          criteria: ['c1', 'c2'],
          alternatives: ['a1', 'a2'],
        });
        sessionId = created.payload!.session_id;
      }
      const envelope = await this.api.importDocument(sessionId, text);
      this.store.applyServer(sessionId, envelope.payload!);
      await this.refreshHotspot();
    });
  }

  async setJudgment(matrix: string, a: string, b: string, value: string): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    const revision = this.store.revision() ?? undefined;
    this.store.update({ pendingEdit: { matrix, a, b, value } });
    try {
      const envelope = await this.api.putJudgment(sessionId, { matrix, a, b, value }, revision);
      this.store.applyServer(sessionId, envelope.payload!);
      this.sensitivity = null;
      await this.refreshHotspot();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        await this.refreshSession();
        this.store.update({
          banner: {
            kind: 'conflict',
            text: 'The session changed elsewhere; showing the latest state. Re-apply your edit?',
            retry: { matrix, a, b, value },
          },
        });
      } else if (error instanceof ApiError && error.status === 422) {
        this.store.update({
          cellError: { matrix, a, b, message: error.message },
          pendingEdit: null,
        });
      } else {
        this.store.update({
          banner: { kind: 'error', text: error instanceof Error ? error.message : String(error) },
          pendingEdit: null,
        });
      }
    }
  }

  async retryPending(edit: PendingEdit): Promise<void> {
    this.store.update({ banner: null });
    await this.setJudgment(edit.matrix, edit.a, edit.b, edit.value);
  }

  async refreshSession(): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    await this.guard(async () => {
      const envelope = await this.api.getSession(sessionId);
      this.store.applyServer(sessionId, envelope.payload!);
      await this.refreshHotspot();
    });
  }

  private async refreshHotspot(): Promise<void> {
    this.hotspot = null;
    const { sessionId, session, selectedMatrix } = this.store.get();
    if (!sessionId || !session) return;
    const status = session.snapshot.statuses[selectedMatrix];
    if (!status || !status.complete || status.size < 3) return;
    try {
      const envelope = await this.api.getHotspots(sessionId, selectedMatrix, 1);
      const spots = envelope.payload?.hotspots ?? [];
      this.hotspot = spots.length > 0 && spots[0]!.deviation > 1e-9 ? spots[0]! : null;
    } catch {
      this.hotspot = null; // advisory only; the grid works without it
    }
    this.render();
  }

  async selectMatrix(matrixId: string): Promise<void> {
    this.store.update({ selectedMatrix: matrixId, cellError: null });
    await this.refreshHotspot();
  }

  selectView(view: ViewName): void {
    this.store.update({ view });
  }

  async selectCriterion(criterion: string): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    this.store.update({ selectedCriterion: criterion });
    await this.guard(async () => {
      const envelope = await this.api.getSensitivity(sessionId, criterion);
      this.sensitivity = envelope.payload!;
      this.render();
    });
  }

  async sweep(criterion: string, weight: number): Promise<void> {
    const { sessionId } = this.store.get();
    if (!sessionId) return;
    await this.guard(async () => {
      const envelope = await this.api.getSensitivity(sessionId, criterion, weight);
      this.sensitivity = envelope.payload!;
      this.render();
    });
  }

  async resetSweep(): Promise<void> {
    const criterion = this.store.get().selectedCriterion;
    if (criterion) await this.selectCriterion(criterion);
  }

  async exportDocument(): Promise<string | undefined> {
    const { sessionId } = this.store.get();
    if (!sessionId) return undefined;
    return this.guard(() => this.api.exportDocument(sessionId));
  }

  // ---- rendering ----

  private render(): void {
    const state = this.store.get();
    this.root.replaceChildren();
    if (!state.session) {
      this.renderSetup();
      return;
    }
    this.renderTopbar(state.session);
    if (state.banner) this.renderBanner();

    const layout = document.createElement('div');
    layout.className = 'layout';
    const nav = document.createElement('nav');
    nav.className = 'matrix-nav';
    this.renderMatrixNav(nav, state.session);
    const view = document.createElement('main');
    view.className = 'view';
    if (state.view === 'editor') {
      renderMatrixEditor(view, {
        session: state.session,
        matrixId: state.selectedMatrix,
        hotspot: this.hotspot,
        cellError: state.cellError,
        onEdit: (matrix, a, b, value) => void this.setJudgment(matrix, a, b, value),
      });
    } else if (state.view === 'results') {
      renderResults(view, state.session);
    } else {
      renderSensitivity(view, {
        session: state.session,
        criterion: state.selectedCriterion,
        report: this.sensitivity,
        onSelectCriterion: (criterion) => void this.selectCriterion(criterion),
        onSweep: (criterion, weight) => void this.sweep(criterion, weight),
        onReset: () => void this.resetSweep(),
      });
    }
    layout.append(nav, view);
    this.root.appendChild(layout);
  }

  private renderSetup(): void {
    const panel = document.createElement('div');
    panel.className = 'setup';
    panel.innerHTML = `
      <h1>prioritree</h1>
      <p>Structure a decision, judge element pairs, and let the service rank your options.</p>
      <section class="setup-create">
        <h2>New session</h2>
        <label>Goal <input id="setup-goal" placeholder="pick a laptop"></label>
        <label>Criteria (comma-separated) <input id="setup-criteria" placeholder="price, battery, weight"></label>
        <label>Alternatives (comma-separated) <input id="setup-alternatives" placeholder="A, B"></label>
        <button id="setup-start">Start judging</button>
      </section>
      <section class="setup-import">
        <h2>Import a document</h2>
        <textarea id="setup-document" rows="6" placeholder='{"version": 1, ...}'></textarea>
        <button id="setup-import-btn">Import</button>
      </section>
    `;
    const banner = this.store.get().banner;
    if (banner) {
      const div = document.createElement('div');
      div.className = `banner banner-${banner.kind}`;
      div.textContent = banner.text;
      panel.prepend(div);
    }
    panel.querySelector('#setup-start')!.addEventListener('click', () => {
      const goal = (panel.querySelector('#setup-goal') as HTMLInputElement).value.trim();
      const split = (sel: string) =>
        (panel.querySelector(sel) as HTMLInputElement).value
          .split(',')
          .map((s) => s.trim())
          .filter(Boolean);
      void this.createSession(goal, split('#setup-criteria'), split('#setup-alternatives'));
    });
    panel.querySelector('#setup-import-btn')!.addEventListener('click', () => {
      const text = (panel.querySelector('#setup-document') as HTMLTextAreaElement).value;
      void this.importDocument(text);
    });
    this.root.appendChild(panel);
  }

  private renderTopbar(session: SessionPayload): void {
    const bar = document.createElement('header');
    bar.className = 'topbar';

    const goal = document.createElement('span');
    goal.className = 'goal';
    goal.textContent = session.goal;

    const tabs = document.createElement('div');
    tabs.className = 'tabs';
    const views: [ViewName, string][] = [
      ['editor', 'Judgments'],
      ['results', 'Results'],
      ['sensitivity', 'What-if'],
    ];
    for (const [name, label] of views) {
      const tab = document.createElement('button');
      tab.dataset.view = name;
      tab.textContent = label;
      if (this.store.get().view === name) tab.classList.add('active');
      tab.addEventListener('click', () => this.selectView(name));
      tabs.appendChild(tab);
    }

    const revision = document.createElement('span');
    revision.className = 'revision-badge';
    revision.textContent = `rev ${session.snapshot.revision}`;

    const exportBtn = document.createElement('button');
    exportBtn.className = 'export-btn';
    exportBtn.textContent = 'Export';
    exportBtn.addEventListener('click', () => {
      void this.exportDocument().then((text) => {
        if (text !== undefined) this.showExport(text);
      });
    });

    bar.append(goal, tabs, revision, exportBtn);
    this.root.appendChild(bar);
  }

  private showExport(text: string): void {
    const dialog = document.createElement('div');
    dialog.className = 'export-dialog';
    const area = document.createElement('textarea');
    area.rows = 12;
    area.value = text;
    area.readOnly = true;
    const close = document.createElement('button');
    close.textContent = 'Close';
    close.addEventListener('click', () => dialog.remove());
    dialog.append(area, close);
    this.root.appendChild(dialog);
  }

  private renderBanner(): void {
    const banner = this.store.get().banner!;
    const div = document.createElement('div');
    div.className = `banner banner-${banner.kind}`;
    const text = document.createElement('span');
    text.textContent = banner.text;
    div.appendChild(text);
    if (banner.retry) {
      const retry = document.createElement('button');
      retry.className = 'retry-btn';
      retry.textContent = 'Re-apply edit';
      retry.addEventListener('click', () => void this.retryPending(banner.retry!));
      div.appendChild(retry);
    }
    const dismiss = document.createElement('button');
    dismiss.textContent = 'Dismiss';
    dismiss.addEventListener('click', () => this.store.update({ banner: null }));
    div.appendChild(dismiss);
    this.root.appendChild(div);
  }

  private renderMatrixNav(nav: HTMLElement, session: SessionPayload): void {
    const state = this.store.get();
    const ids = ['criteria', ...session.criteria.map((c) => c.id)];
    for (const matrixId of ids) {
      const status = session.snapshot.statuses[matrixId];
      const button = document.createElement('button');
      button.dataset.matrix = matrixId;
      button.className = 'matrix-link';
      if (matrixId === state.selectedMatrix) button.classList.add('active');
      if (status?.complete) button.classList.add('complete');
      const count = status ? `${status.entered}/${status.required}` : '';
      button.textContent = `${matrixId} ${count}`;
      button.addEventListener('click', () => void this.selectMatrix(matrixId));
      nav.appendChild(button);
    }
    const size = matrixElements(session, state.selectedMatrix).length;
    nav.dataset.selectedSize = String(size);
  }
}

export function mount(root: HTMLElement, baseUrl = ''): App {
  const app = new App(root, new ApiClient(baseUrl));
  app.start();
  return app;
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  mount(document.getElementById('app')!);
}
