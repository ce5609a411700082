/**
 * Session state and its transitions.
 *
 * Every displayed number comes from a SolveResponse; this module never
 * recomputes the mathematics locally.  The solver is injected so tests can
 * drive transitions from recorded responses.
 */

import { ApiClient } from './api.js';
import type { BidSheet } from './bids.js';
import { toDocument } from './bids.js';
import { asNumber } from './types.js';
import type { Num, SolveResponse } from './types.js';

export interface WhatIfRecord {
  item: number;
  fromQuantity: number;
  toQuantity: number;
  deltas: number[];
  rmViolated: boolean;
  improvement: 'better' | 'worse' | 'sideways';
  response: SolveResponse;
}

export interface SessionState {
  sheet: BidSheet;
  response: SolveResponse | null;
  selected: number;
  stale: boolean;
  error: string | null;
  history: WhatIfRecord[];
  generation: number;
}

export function initialState(sheet: BidSheet): SessionState {
  return { sheet, response: null, selected: 0, stale: true,
           error: null, history: [], generation: 0 };
}

export type Solver = (doc: ReturnType<typeof toDocument>) => Promise<SolveResponse>;

export function solverFromClient(client: ApiClient): Solver {
  return doc => client.solve(doc);
}

/** Re-solve after a sheet edit; keeps old numbers marked stale on failure. */
export async function editAndSolve(state: SessionState, sheet: BidSheet,
                                   solve: Solver): Promise<SessionState> {
  const generation = state.generation + 1;
  try {
    const response = await solve(toDocument(sheet));
    return {
      sheet,
      response,
      selected: response.selected,
      stale: false,
      error: null,
      history: state.history,
      generation,
    };
  } catch (err) {
    if ((err as Error).name === 'AbortError') {
      return state; // a newer edit superseded this solve
    }
    return { ...state, sheet, stale: true, generation,
             error: (err as Error).message };
  }
}

export function selectProfile(state: SessionState, index: number): SessionState {
  if (!state.response || index < 0 || index >= state.response.profiles.length) {
    throw new Error(`profile index ${index} out of range`);
  }
  return { ...state, selected: index };
}

/** The index the service marked as the canonical (product-maximizing) pick. */
export function defaultSelection(state: SessionState): number {
  return state.response ? state.response.selected : 0;
}

/**
 * Quantity what-if: re-solve with one item's quantity changed and report
 * per-agent utility deltas relative to the currently selected profile.
 * The move counts as an improvement when the item is a unanimous good
 * being added or a unanimous bad being removed; resource monotonicity is
 * flagged as violated when an improvement still hurts somebody.
 */
export async function whatIfEndowment(state: SessionState, item: number,
                                      quantity: number,
                                      solve: Solver): Promise<SessionState> {
  if (!(quantity > 0)) throw new Error('quantity must be positive');
  if (!state.response) throw new Error('solve the base sheet first');
  const sheet = state.sheet;
  const fromQuantity = sheet.quantities[item]!;
  const quantities = [...sheet.quantities];
  quantities[item] = quantity;
  const nextSheet = { ...sheet, quantities };
  const response = await solve(toDocument(nextSheet));

  const before = state.response.profiles[state.selected]!.map(asNumber);
  const after = response.profiles[response.selected]!.map(asNumber);
  const deltas = after.map((v, i) => v - (before[i] ?? 0));
  const improvement = classifyImprovement(sheet.bids.map(r => r[item]!),
                                          fromQuantity, quantity);
  const rmViolated = improvement === 'better' && deltas.some(d => d < -1e-9);
  const record: WhatIfRecord = { item, fromQuantity, toQuantity: quantity,
                                 deltas, rmViolated, improvement, response };
  return {
    sheet: nextSheet,
    response,
    selected: response.selected,
    stale: false,
    error: null,
    history: [...state.history, record],
    generation: state.generation + 1,
  };
}

export function classifyImprovement(column: number[], fromQ: number,
                                    toQ: number): 'better' | 'worse' | 'sideways' {
  if (toQ === fromQ) return 'sideways';
  const grew = toQ > fromQ;
  if (grew && column.every(v => v >= 0)) return 'better';
  if (!grew && column.every(v => v <= 0)) return 'better';
  if (grew && column.every(v => v <= 0)) return 'worse';
  if (!grew && column.every(v => v >= 0)) return 'worse';
  return 'sideways';
}

export interface BadgeInfo {
  kind: string;
  label: string;
  tone: 'good' | 'bad' | 'flat' | 'none';
}

/** Classification badge copy: dividing manna is joint good or bad news. */
export function badge(state: SessionState): BadgeInfo {
  if (!state.response) return { kind: '', label: 'enter bids to solve', tone: 'none' };
  switch (state.response.classification) {
    case 'positive':
      return { kind: 'positive', label: 'Positive: good news for everyone', tone: 'good' };
    case 'negative':
      return { kind: 'negative', label: 'Negative: bad news for everyone', tone: 'bad' };
    default:
      return { kind: 'null', label: 'Null: the manna is worthless overall', tone: 'flat' };
  }
}

export function profileRows(state: SessionState): {
  index: number; values: number[]; product: number; isDefault: boolean;
  isSelected: boolean;
}[] {
  if (!state.response) return [];
  return state.response.profiles.map((profile, index) => {
    const values = profile.map(asNumber);
    return {
      index,
      values,
      product: values.reduce((s, v) => s * Math.abs(v), 1),
      isDefault: index === state.response!.selected,
      isSelected: index === state.selected,
    };
  });
}

export function selectedAllocation(state: SessionState): number[][] {
  if (!state.response) return [];
  return state.response.allocations[state.selected]!.map(
    row => row.map(asNumber));
}

export function selectedPrice(state: SessionState): number[] | null {
  const divisions = state.response?.divisions;
  if (!divisions) return null;
  const division = divisions[state.selected];
  return division ? division.price.map(asNumber) : null;
}
