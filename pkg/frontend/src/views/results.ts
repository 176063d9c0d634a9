/** Ranking display: score bars with the winner emphasized and per-matrix
 * consistency chips. Incomplete models get a completeness checklist instead.
 * Every number shown is a server value run through display formatting.
 */

import { fmt, fmtCr, fmtPercent } from '../format';
import type { SessionPayload } from '../types';

export function renderResults(container: HTMLElement, session: SessionPayload): void {
  container.replaceChildren();
  const snapshot = session.snapshot;

  if (!snapshot.complete || !snapshot.synthesis) {
    const heading = document.createElement('h3');
    heading.textContent = 'Model incomplete';
    container.appendChild(heading);
    const list = document.createElement('ul');
    list.className = 'checklist';
    for (const [matrixId, status] of Object.entries(snapshot.statuses)) {
      const item = document.createElement('li');
      item.dataset.matrix = matrixId;
      const state = status.complete ? 'done' : 'todo';
      item.className = `check-${state}`;
      item.textContent = `${matrixId}: ${status.entered}/${status.required} (${fmtPercent(status.completeness)})`;
      list.appendChild(item);
    }
    container.appendChild(list);
    renderConsistencyChips(container, session);
    return;
  }

  const synthesis = snapshot.synthesis;
  const bars = document.createElement('div');
  bars.className = 'score-bars';
  for (const entry of synthesis.ranking) {
    const row = document.createElement('div');
    row.className = 'score-row';
    row.dataset.alternative = entry.id;
    if (entry.position === 1) row.classList.add('winner');
    if (entry.tied) row.classList.add('tied');

    const label = document.createElement('span');
    label.className = 'score-label';
    label.textContent = entry.tied ? `${entry.id} (tied)` : entry.id;

    const track = document.createElement('div');
    track.className = 'score-track';
    const bar = document.createElement('div');
    bar.className = 'score-bar';
    bar.style.width = `${entry.score * 100}%`;
    track.appendChild(bar);

    const value = document.createElement('span');
    value.className = 'score-value';
    value.textContent = fmt(entry.score);

    row.append(label, track, value);
    bars.appendChild(row);
  }
  container.appendChild(bars);
  renderConsistencyChips(container, session);
}

function renderConsistencyChips(container: HTMLElement, session: SessionPayload): void {
  const reports = Object.entries(session.snapshot.consistency);
  if (reports.length === 0) return;
  const wrap = document.createElement('div');
  wrap.className = 'cr-chips';
  for (const [matrixId, report] of reports) {
    const chip = document.createElement('span');
    chip.dataset.matrix = matrixId;
    chip.className = `cr-chip cr-${report.verdict}`;
    chip.textContent = `${matrixId} CR ${fmtCr(report.cr)}`;
    chip.title = `lambda_max ${fmt(report.lambda_max)}, CI ${fmt(report.ci)}, ${report.verdict}`;
    wrap.appendChild(chip);
  }
  container.appendChild(wrap);
}
