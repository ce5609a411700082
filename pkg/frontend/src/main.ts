/**
 * Bootstrap: wire the bid matrix, badge, profile selector and what-if
 * panel to the service.  Edits re-solve after a 300 ms debounce; newer
 * edits abort older requests.
 */

import { ApiClient } from './api.js';
import { makeSheet, setBid, setQuantity, toggleNormalize } from './bids.js';
import type { BidSheet } from './bids.js';
import {
  editAndSolve,
  initialState,
  selectProfile,
  solverFromClient,
  whatIfEndowment,
} from './state.js';
import type { SessionState } from './state.js';
import { renderAllocation, renderBadge, renderMatrix, renderProfiles, renderWhatIf } from './render.js';

const DEBOUNCE_MS = 300;

const seed: BidSheet = makeSheet(
  ['ann', 'bob'],
  ['a', 'b', 'c'],
  [1, 1, 1],
  [[-1, -3, -1], [-2, -1, -1]],
);

const client = new ApiClient('');
const solve = solverFromClient(client);
let state: SessionState = initialState(seed);
let timer: ReturnType<typeof setTimeout> | null = null;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function render(): void {
  el('badge').innerHTML = renderBadge(state);
  el('matrix').innerHTML = renderMatrix(state.sheet);
  el('profiles').innerHTML = renderProfiles(state);
  el('allocation').innerHTML = renderAllocation(state);
  el('whatif-log').innerHTML = renderWhatIf(state);
  el('error').textContent = state.error ?? '';
  wireMatrix();
  wireProfiles();
}

function scheduleSolve(sheet: BidSheet): void {
  state = { ...state, sheet, stale: true };
  el('badge').innerHTML = renderBadge(state);
  if (timer) clearTimeout(timer);
  timer = setTimeout(async () => {
    state = await editAndSolve(state, sheet, solve);
    render();
  }, DEBOUNCE_MS);
}

function wireMatrix(): void {
  el('matrix').querySelectorAll<HTMLInputElement>('input.bid').forEach(input => {
    input.addEventListener('change', () => {
      const agent = Number(input.dataset.agent);
      const item = Number(input.dataset.item);
      const value = Number(input.value);
      if (!Number.isFinite(value)) {
        state = { ...state, error: 'bids must be numbers' };
        render();
        return;
      }
      scheduleSolve(setBid(state.sheet, agent, item, value));
    });
  });
  el('matrix').querySelectorAll<HTMLInputElement>('input.qty').forEach(input => {
    input.addEventListener('change', () => {
      const item = Number(input.dataset.item);
      const value = Number(input.value);
      if (!(value > 0)) {
        state = { ...state, error: 'quantities must be positive' };
        render();
        return;
      }
      void runWhatIf(item, value);
    });
  });
  el('matrix').querySelectorAll<HTMLInputElement>('input[data-norm]').forEach(input => {
    input.addEventListener('change', () => {
      scheduleSolve(toggleNormalize(state.sheet, Number(input.dataset.norm)));
    });
  });
}

async function runWhatIf(item: number, quantity: number): Promise<void> {
  try {
    state = await whatIfEndowment(state, item, quantity, solve);
  } catch (err) {
    state = { ...state, error: (err as Error).message };
  }
  render();
}

function wireProfiles(): void {
  el('profiles').querySelectorAll<HTMLButtonElement>('button[data-select]').forEach(button => {
    button.addEventListener('click', () => {
      state = selectProfile(state, Number(button.dataset.select));
      render();
    });
  });
}

document.addEventListener('DOMContentLoaded', () => {
  render();
  void (async () => {
    state = await editAndSolve(state, state.sheet, solve);
    render();
  })();
});
