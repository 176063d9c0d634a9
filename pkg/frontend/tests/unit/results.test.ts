import { beforeEach, describe, expect, it } from 'vitest';

import { renderResults } from '../../src/views/results';
import { makeSession, makeSnapshot, makeSynthesis } from '../helpers';

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement('div');
  document.body.replaceChildren(container);
});

describe('results view', () => {
  it('draws one bar per alternative with the server score text', () => {
    const session = makeSession();
    renderResults(container, session);
    const rows = container.querySelectorAll('.score-row');
    expect(rows).toHaveLength(2);
    const winner = container.querySelector<HTMLElement>('.score-row.winner')!;
    expect(winner.dataset.alternative).toBe('A');
    expect(winner.querySelector('.score-value')?.textContent).toBe('0.700');
    const bar = winner.querySelector<HTMLElement>('.score-bar')!;
    expect(bar.style.width).toBe('70%');
  });

  it('keeps ranking order and emphasizes only the winner', () => {
    renderResults(container, makeSession());
    const order = [...container.querySelectorAll<HTMLElement>('.score-row')].map(
      (r) => r.dataset.alternative,
    );
    expect(order).toEqual(['A', 'B']);
    expect(container.querySelectorAll('.score-row.winner')).toHaveLength(1);
  });

  it('flags tied alternatives', () => {
    const synthesis = makeSynthesis({
      scores: [0.5, 0.5],
      ranking: [
        { id: 'A', score: 0.5, position: 1, tied: true },
        { id: 'B', score: 0.5, position: 2, tied: true },
      ],
    });
    renderResults(container, makeSession({ snapshot: makeSnapshot({ synthesis }) }));
    const labels = [...container.querySelectorAll('.score-label')].map((l) => l.textContent);
    expect(labels).toEqual(['A (tied)', 'B (tied)']);
    expect(container.querySelectorAll('.score-row.tied')).toHaveLength(2);
  });

  it('colors consistency chips by verdict', () => {
    const session = makeSession();
    session.snapshot.consistency.c2 = {
      lambda_max: 3.2,
      ci: 0.1,
      cr: 0.1724,
      random_index: 0.58,
      verdict: 'inconsistent',
    };
    renderResults(container, session);
    const bad = container.querySelector<HTMLElement>('.cr-chip.cr-inconsistent')!;
    expect(bad.dataset.matrix).toBe('c2');
    expect(bad.textContent).toBe('c2 CR 0.1724');
    expect(container.querySelectorAll('.cr-chip.cr-consistent')).toHaveLength(2);
  });

  it('shows a completeness checklist when the model is incomplete', () => {
    const snapshot = makeSnapshot({
      complete: false,
      synthesis: null,
      statuses: {
        criteria: { size: 2, entered: 0, required: 1, completeness: 0, complete: false, pending: [['c1', 'c2']] },
        c1: { size: 2, entered: 1, required: 1, completeness: 1, complete: true, pending: [] },
        c2: { size: 2, entered: 0, required: 1, completeness: 0, complete: false, pending: [['A', 'B']] },
      },
      consistency: {},
    });
    renderResults(container, makeSession({ snapshot }));
    expect(container.querySelector('h3')?.textContent).toBe('Model incomplete');
    expect(container.querySelectorAll('.checklist li')).toHaveLength(3);
    expect(container.querySelector<HTMLElement>('li[data-matrix="criteria"]')?.textContent).toBe(
      'criteria: 0/1 (0.0%)',
    );
    expect(container.querySelector('li[data-matrix="c1"]')?.classList.contains('check-done')).toBe(true);
    expect(container.querySelectorAll('.score-row')).toHaveLength(0);
  });
});
