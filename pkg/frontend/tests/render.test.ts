import { describe, expect, it } from 'vitest';

import { makeSheet } from '../src/bids.js';
import { editAndSolve, initialState, whatIfEndowment } from '../src/state.js';
import { renderAllocation, renderBadge, renderMatrix, renderProfiles, renderWhatIf } from '../src/render.js';
import { fixtureSolver } from './fixtures.js';

const solver = fixtureSolver([
  'lambda-minus-one.solve', 'lambda-four.solve', 'prop4-base.solve',
  'prop4-improved.solve',
]);

const LAMBDA_SHEET = makeSheet(['1', '2'], ['a', 'b', 'c'], [1, 1, 1],
                               [[-1, -3, -1], [-2, -1, -1]]);

describe('panel markup', () => {
  it('renders the negative badge and profile list with the default starred', async () => {
    const state = await editAndSolve(initialState(LAMBDA_SHEET), LAMBDA_SHEET, solver);
    expect(renderBadge(state)).toContain('data-kind="negative"');
    expect(renderBadge(state)).toContain('bad news for everyone');
    const list = renderProfiles(state);
    expect(list.match(/<li/g)).toHaveLength(4);
    expect(list).toContain('(-1.5, -1.5)');
    expect(list).toContain('class="profile selected default"');
    expect(list).not.toContain('disabled');
  });

  it('greys the badge while a re-solve is pending', () => {
    const state = { ...initialState(LAMBDA_SHEET), stale: true };
    expect(renderBadge(state)).toContain('enter bids');
  });

  it('disables the selector when only one division exists', async () => {
    const sheet = makeSheet(['1', '2'], ['a', 'b', 'c'], [1, 1, 1],
                            [[-1, -3, 4], [-2, -1, 4]]);
    const state = await editAndSolve(initialState(sheet), sheet, solver);
    expect(renderBadge(state)).toContain('data-kind="positive"');
    expect(renderProfiles(state)).toContain('disabled');
  });

  it('renders the allocation table with prices', async () => {
    const state = await editAndSolve(initialState(LAMBDA_SHEET), LAMBDA_SHEET, solver);
    const table = renderAllocation(state);
    expect(table).toContain('<th>a</th>');
    expect(table).toContain('class="price"');
  });

  it('renders the matrix with editable cells and the 100pt toggle', () => {
    const markup = renderMatrix(LAMBDA_SHEET);
    expect(markup.match(/class="bid"/g)).toHaveLength(6);
    expect(markup.match(/class="qty"/g)).toHaveLength(3);
    expect(markup).toContain('100pt');
  });

  it('shows the monotonicity flag in the what-if log', async () => {
    const sheet = makeSheet(['1', '2'], ['a', 'b'], [1, 1], [[-1, -4], [-4, -1]]);
    let state = await editAndSolve(initialState(sheet), sheet, solver);
    state = await whatIfEndowment(state, 0, 1 / 9, solver);
    const log = renderWhatIf(state);
    expect(log).toContain('resource monotonicity violated');
  });
});
