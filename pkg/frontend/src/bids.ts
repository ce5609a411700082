/**
 * The editable bid sheet: agent names, item names with quantities, and a
 * matrix of bids (positive = good, negative = bad, zero = indifferent).
 *
 * Sheets convert to problem documents for the service; an optional
 * 100-point normalization rescales each agent's absolute bids to sum to
 * 100 without changing signs, which is payoff-irrelevant for the solver
 * (rules are invariant to positive row rescaling) but keeps entries
 * comparable across agents.
 */

import type { ProblemDocument } from './types.js';

export const MAX_DIMENSION = 12;

export interface BidSheet {
  agents: string[];
  items: string[];
  quantities: number[];
  bids: number[][];
  normalize: boolean[];
}

export function makeSheet(agents: string[], items: string[],
                          quantities: number[], bids: number[][]): BidSheet {
  validateShape(agents, items, quantities, bids);
  return {
    agents: [...agents],
    items: [...items],
    quantities: [...quantities],
    bids: bids.map(row => [...row]),
    normalize: agents.map(() => false),
  };
}

function validateShape(agents: string[], items: string[],
                       quantities: number[], bids: number[][]): void {
  if (agents.length < 1 || items.length < 1) {
    throw new Error('need at least one agent and one item');
  }
  if (agents.length > MAX_DIMENSION || items.length > MAX_DIMENSION) {
    throw new Error(`matrix capped at ${MAX_DIMENSION}x${MAX_DIMENSION}`);
  }
  if (quantities.length !== items.length) {
    throw new Error('one quantity per item required');
  }
  if (quantities.some(q => !(q > 0) || !Number.isFinite(q))) {
    throw new Error('quantities must be positive');
  }
  if (bids.length !== agents.length || bids.some(r => r.length !== items.length)) {
    throw new Error('bid matrix must be agents x items');
  }
  if (bids.some(row => row.some(v => !Number.isFinite(v)))) {
    throw new Error('bids must be finite numbers');
  }
}

export function setBid(sheet: BidSheet, agent: number, item: number,
                       value: number): BidSheet {
  if (!Number.isFinite(value)) throw new Error('bid must be a finite number');
  const bids = sheet.bids.map(row => [...row]);
  bids[agent]![item] = value;
  return { ...sheet, bids };
}

export function setQuantity(sheet: BidSheet, item: number, value: number): BidSheet {
  if (!(value > 0) || !Number.isFinite(value)) {
    throw new Error('quantity must be positive');
  }
  const quantities = [...sheet.quantities];
  quantities[item] = value;
  return { ...sheet, quantities };
}

export function toggleNormalize(sheet: BidSheet, agent: number): BidSheet {
  const normalize = [...sheet.normalize];
  normalize[agent] = !normalize[agent];
  return { ...sheet, normalize };
}

/** An agent's bids rescaled so absolute values sum to 100 (signs kept). */
export function normalizedRow(row: number[]): number[] {
  const total = row.reduce((s, v) => s + Math.abs(v), 0);
  if (total === 0) return [...row];
  return row.map(v => (v * 100) / total);
}

export function effectiveBids(sheet: BidSheet): number[][] {
  return sheet.bids.map((row, i) => (sheet.normalize[i] ? normalizedRow(row) : [...row]));
}

export function toDocument(sheet: BidSheet, rule = 'competitive'): ProblemDocument {
  return {
    agents: [...sheet.agents],
    items: sheet.items.map((name, a) => ({ name, quantity: sheet.quantities[a]! })),
    utilities: effectiveBids(sheet),
    rule,
  };
}

/** Sign summary per agent: is anything on the sheet attractive to them? */
export function agentStance(sheet: BidSheet, agent: number): 'attracted' | 'repulsed' {
  return sheet.bids[agent]!.some(v => v > 0) ? 'attracted' : 'repulsed';
}
