/** What-if weight sweep for one criterion.
 *
 * The slider picks a weight; on release the server re-synthesizes at that
 * weight and reports the stability interval and crossover, which are drawn
 * on the track. Reset returns to the baseline synthesis. All numbers are
 * server-computed.
 */

import { fmt, fmtWeight } from '../format';
import type { SensitivityPayload, SessionPayload, SynthesisPayload } from '../types';

export interface SensitivityProps {
  session: SessionPayload;
  criterion: string | null;
  report: SensitivityPayload | null;
  onSelectCriterion: (criterion: string) => void;
  onSweep: (criterion: string, weight: number) => void;
  onReset: () => void;
}

export function renderSensitivity(container: HTMLElement, props: SensitivityProps): void {
  const { session, criterion, report, onSelectCriterion, onSweep, onReset } = props;
  container.replaceChildren();
  const snapshot = session.snapshot;

  if (!snapshot.complete || !snapshot.synthesis) {
    const note = document.createElement('p');
    note.className = 'sensitivity-unavailable';
    note.textContent = 'Complete every matrix to explore weight sensitivity.';
    container.appendChild(note);
    return;
  }

  const picker = document.createElement('select');
  picker.className = 'criterion-picker';
  for (const element of session.criteria) {
    const option = document.createElement('option');
    option.value = element.id;
    option.textContent = `${element.id} - ${element.label}`;
    picker.appendChild(option);
  }
  if (criterion) picker.value = criterion;
  picker.addEventListener('change', () => onSelectCriterion(picker.value));
  container.appendChild(picker);

  if (!report) {
    const hint = document.createElement('p');
    hint.textContent = 'Pick a criterion to sweep its weight.';
    container.appendChild(hint);
    return;
  }

  const info = document.createElement('p');
  info.className = 'sweep-info';
  info.textContent =
    `Baseline weight ${fmtWeight(report.current_weight)}, winner ${report.winner}. ` +
    `Stable for weight in [${fmtWeight(report.stable_low)}, ${fmtWeight(report.stable_high)}].`;
  container.appendChild(info);

  const track = document.createElement('div');
  track.className = 'slider-track';

  const stable = document.createElement('div');
  stable.className = 'stable-zone';
  stable.style.left = `${report.stable_low * 100}%`;
  stable.style.width = `${(report.stable_high - report.stable_low) * 100}%`;
  track.appendChild(stable);

  if (report.crossover_weight !== null) {
    const marker = document.createElement('div');
    marker.className = 'crossover-marker';
    marker.style.left = `${report.crossover_weight * 100}%`;
    marker.title = `crossover at ${fmtWeight(report.crossover_weight)} -> ${report.challenger}`;
    track.appendChild(marker);

    const crossoverNote = document.createElement('p');
    crossoverNote.className = 'crossover-note';
    crossoverNote.textContent = `Crossover at ${fmtWeight(report.crossover_weight)}: ${report.challenger} takes over.`;
    container.appendChild(crossoverNote);
  } else {
    const holdNote = document.createElement('p');
    holdNote.className = 'crossover-note none';
    holdNote.textContent = `${report.winner} wins at every weight.`;
    container.appendChild(holdNote);
  }

  const slider = document.createElement('input');
  slider.type = 'range';
  slider.min = '0';
  slider.max = '1';
  slider.step = '0.0001';
  slider.value = String(report.scores_at ? report.scores_at.weight : report.current_weight);
  slider.className = 'weight-slider';
  slider.addEventListener('change', () => onSweep(report.criterion, Number(slider.value)));
  track.appendChild(slider);
  container.appendChild(track);

  const controls = document.createElement('div');
  controls.className = 'sweep-controls';
  const reset = document.createElement('button');
  reset.textContent = 'Reset to baseline';
  reset.addEventListener('click', () => onReset());
  controls.appendChild(reset);
  container.appendChild(controls);

  const synthesis = report.scores_at ? report.scores_at.synthesis : snapshot.synthesis;
  const label = document.createElement('h4');
  label.textContent = report.scores_at
    ? `Scores at weight ${fmtWeight(report.scores_at.weight)}`
    : 'Baseline scores';
  container.appendChild(label);
  container.appendChild(scoreList(synthesis));
}

function scoreList(synthesis: SynthesisPayload): HTMLElement {
  const list = document.createElement('ul');
  list.className = 'sweep-scores';
  for (const entry of synthesis.ranking) {
    const item = document.createElement('li');
    item.dataset.alternative = entry.id;
    if (entry.position === 1) item.classList.add('winner');
    item.textContent = `${entry.position}. ${entry.id} ${fmt(entry.score)}`;
    list.appendChild(item);
  }
  return list;
}
