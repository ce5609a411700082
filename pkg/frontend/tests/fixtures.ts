/** Load captured service responses and serve them as a fake solver. */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type { Solver } from '../src/state.js';
import type { ProblemDocument, SolveResponse } from '../src/types.js';
import { asNumber } from '../src/types.js';

const here = dirname(fileURLToPath(import.meta.url));

export interface Fixture {
  request: ProblemDocument;
  response: SolveResponse;
}

export function loadFixture(name: string): Fixture {
  const raw = readFileSync(join(here, 'fixtures', `${name}.json`), 'utf-8');
  return JSON.parse(raw) as Fixture;
}

function matrixClose(a: ProblemDocument, b: ProblemDocument): boolean {
  if (a.utilities.length !== b.utilities.length) return false;
  if (a.items.length !== b.items.length) return false;
  for (let i = 0; i < a.utilities.length; i++) {
    for (let j = 0; j < a.items.length; j++) {
      if (Math.abs(asNumber(a.utilities[i]![j]!) - asNumber(b.utilities[i]![j]!)) > 1e-9) {
        return false;
      }
    }
  }
  for (let j = 0; j < a.items.length; j++) {
    if (Math.abs(asNumber(a.items[j]!.quantity) - asNumber(b.items[j]!.quantity)) > 1e-9) {
      return false;
    }
  }
  return true;
}

/** A Solver that answers from recorded responses (exact-matrix match). */
export function fixtureSolver(names: string[]): Solver {
  const fixtures = names.map(loadFixture);
  return async doc => {
    const hit = fixtures.find(f => matrixClose(f.request, doc));
    if (!hit) {
      throw new Error(`no fixture for utilities ${JSON.stringify(doc.utilities)}`);
    }
    return hit.response;
  };
}
