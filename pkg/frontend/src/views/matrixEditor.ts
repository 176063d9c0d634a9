/** Interactive comparison grid for one matrix.
 *
 * Upper-triangle cells carry a 17-value picker; the lower triangle displays
 * reciprocals read-only; the diagonal is fixed at 1. Judgment values come
 * from the session payload's entered pairs. The worst inconsistency triad,
 * when provided, is highlighted with its suggested replacement.
 */

import { reciprocalToken, SCALE_ENTRIES } from '../scale';
import { CRITERIA_MATRIX_ID } from '../types';
import type { ElementInfo, HotspotPayload, SessionPayload } from '../types';

export interface MatrixEditorProps {
  session: SessionPayload;
  matrixId: string;
  hotspot: HotspotPayload | null;
  cellError: { matrix: string; a: string; b: string; message: string } | null;
  onEdit: (matrix: string, a: string, b: string, value: string) => void;
}

export function matrixElements(session: SessionPayload, matrixId: string): ElementInfo[] {
  return matrixId === CRITERIA_MATRIX_ID ? session.criteria : session.alternatives;
}

function enteredValue(session: SessionPayload, matrixId: string, a: string, b: string): string | null {
  for (const pair of session.judgments[matrixId] ?? []) {
    if (pair.a === a && pair.b === b) return pair.value;
    if (pair.a === b && pair.b === a) return reciprocalToken(pair.value);
  }
  return null;
}

function hotspotCells(hotspot: HotspotPayload | null): Set<string> {
  if (!hotspot) return new Set();
  const [i, j, l] = hotspot.triad;
  return new Set([`${i}|${j}`, `${j}|${l}`, `${i}|${l}`]);
}

export function renderMatrixEditor(container: HTMLElement, props: MatrixEditorProps): void {
  const { session, matrixId, hotspot, cellError, onEdit } = props;
  const elements = matrixElements(session, matrixId);
  const inTriad = hotspotCells(hotspot);

  container.replaceChildren();
  const table = document.createElement('table');
  table.className = 'matrix-grid';

  const head = table.createTHead().insertRow();
  head.appendChild(document.createElement('th'));
  for (const el of elements) {
    const th = document.createElement('th');
    th.textContent = el.id;
    th.title = el.label;
    head.appendChild(th);
  }

  const body = table.createTBody();
  for (const rowEl of elements) {
    const row = body.insertRow();
    const th = document.createElement('th');
    th.textContent = rowEl.id;
    th.title = rowEl.label;
    row.appendChild(th);
    for (const colEl of elements) {
      const cell = row.insertCell();
      cell.dataset.cell = `${rowEl.id}:${colEl.id}`;
      const rowIndex = elements.indexOf(rowEl);
      const colIndex = elements.indexOf(colEl);
      if (rowIndex === colIndex) {
        cell.textContent = '1';
        cell.className = 'diagonal';
        continue;
      }
      const upper = rowIndex < colIndex;
      const value = enteredValue(session, matrixId, rowEl.id, colEl.id);
      const key = upper ? `${rowEl.id}|${colEl.id}` : `${colEl.id}|${rowEl.id}`;
      if (inTriad.has(key)) cell.classList.add('hotspot');
      if (
        hotspot &&
        upper &&
        rowEl.id === hotspot.cell[0] &&
        colEl.id === hotspot.cell[1]
      ) {
        cell.classList.add('hotspot-cell');
        cell.title = `suggested consistent value: ${hotspot.suggested}`;
      }
      if (!upper) {
        cell.className += ' reciprocal';
        cell.textContent = value ?? '—';
        continue;
      }
      const select = document.createElement('select');
      select.dataset.edit = `${rowEl.id}:${colEl.id}`;
      const blank = document.createElement('option');
      blank.value = '';
      blank.textContent = '—';
      select.appendChild(blank);
      for (const entry of SCALE_ENTRIES) {
        const option = document.createElement('option');
        option.value = entry.token;
        option.textContent = entry.token;
        option.title = entry.wording;
        select.appendChild(option);
      }
      select.value = value ?? '';
      const selected = SCALE_ENTRIES.find((e) => e.token === select.value);
      if (selected) select.title = selected.wording;
      select.addEventListener('change', () => {
        if (select.value !== '') onEdit(matrixId, rowEl.id, colEl.id, select.value);
      });
      cell.appendChild(select);
      if (
        cellError &&
        cellError.matrix === matrixId &&
        cellError.a === rowEl.id &&
        cellError.b === colEl.id
      ) {
        const err = document.createElement('div');
        err.className = 'cell-error';
        err.textContent = cellError.message;
        cell.appendChild(err);
      }
    }
  }
  container.appendChild(table);

  if (hotspot) {
    const note = document.createElement('p');
    note.className = 'hotspot-note';
    note.textContent =
      `Least consistent triad: ${hotspot.triad.join(' / ')} - ` +
      `try ${hotspot.suggested} at (${hotspot.cell[0]}, ${hotspot.cell[1]})`;
    container.appendChild(note);
  }
}
