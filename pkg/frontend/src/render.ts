/**
 * Pure HTML renderers for the panels.  Kept DOM-free so the round-trip
 * tests can assert on markup without a browser.
 */

import type { BidSheet } from './bids.js';
import type { SessionState } from './state.js';
import { badge, profileRows, selectedAllocation, selectedPrice } from './state.js';

const esc = (s: string) => s.replace(/[&<>"]/g, c =>
  ({ '&': '&amp;', '<': '&lt;', '>': '&gt;', '"': '&quot;' }[c] as string));

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return String(v);
  const rounded = Math.round(v * 1e6) / 1e6;
  return String(rounded);
}

export function renderBadge(state: SessionState): string {
  const info = badge(state);
  const stale = state.stale ? ' stale' : '';
  return `<span class="badge ${info.tone}${stale}" data-kind="${info.kind}">`
    + `${esc(info.label)}</span>`;
}

export function renderMatrix(sheet: BidSheet): string {
  const head = ['<th></th>']
    .concat(sheet.items.map((name, a) =>
      `<th>${esc(name)}<input class="qty" data-item="${a}" `
      + `value="${fmt(sheet.quantities[a]!)}"></th>`))
    .join('');
  const rows = sheet.agents.map((agent, i) => {
    const cells = sheet.items.map((_, a) =>
      `<td><input class="bid" data-agent="${i}" data-item="${a}" `
      + `value="${fmt(sheet.bids[i]![a]!)}"></td>`).join('');
    const checked = sheet.normalize[i] ? ' checked' : '';
    return `<tr><th>${esc(agent)}<label class="norm"><input type="checkbox" `
      + `data-norm="${i}"${checked}>100pt</label></th>${cells}</tr>`;
  }).join('');
  return `<table class="bids"><thead><tr>${head}</tr></thead>`
    + `<tbody>${rows}</tbody></table>`;
}

export function renderProfiles(state: SessionState): string {
  const rows = profileRows(state);
  if (!rows.length) return '<p class="empty">no divisions yet</p>';
  const single = rows.length === 1;
  const items = rows.map(row => {
    const classes = ['profile'];
    if (row.isSelected) classes.push('selected');
    if (row.isDefault) classes.push('default');
    const values = row.values.map(fmt).join(', ');
    const star = row.isDefault ? ' <span class="star" title="product maximizer">&#9733;</span>' : '';
    const disabled = single ? ' disabled' : '';
    return `<li class="${classes.join(' ')}">`
      + `<button data-select="${row.index}"${disabled}>(${values})</button>`
      + `<span class="product">|product| = ${fmt(row.product)}</span>${star}</li>`;
  }).join('');
  return `<ol class="profiles">${items}</ol>`;
}

export function renderAllocation(state: SessionState): string {
  const shares = selectedAllocation(state);
  if (!shares.length || !state.response) return '';
  const { agents, items } = state.response;
  const head = ['<th></th>'].concat(items.map(n => `<th>${esc(n)}</th>`)).join('');
  const rows = shares.map((row, i) =>
    `<tr><th>${esc(agents[i] ?? String(i))}</th>`
    + row.map(v => `<td>${fmt(v)}</td>`).join('') + '</tr>').join('');
  const price = selectedPrice(state);
  const priceRow = price
    ? `<tr class="price"><th>price</th>${price.map(v => `<td>${fmt(v)}</td>`).join('')}</tr>`
    : '';
  return `<table class="allocation"><thead><tr>${head}</tr></thead>`
    + `<tbody>${rows}${priceRow}</tbody></table>`;
}

export function renderWhatIf(state: SessionState): string {
  if (!state.history.length) return '<p class="empty">no what-ifs yet</p>';
  const entries = state.history.map(record => {
    const deltas = record.deltas.map(fmt).join(', ');
    const flag = record.rmViolated
      ? '<strong class="rm-flag">resource monotonicity violated</strong>'
      : (record.improvement === 'better' ? 'everyone kept whole' : '');
    const name = state.response?.items[record.item] ?? String(record.item);
    return `<li>item ${esc(name)}: ${fmt(record.fromQuantity)} &rarr; `
      + `${fmt(record.toQuantity)}; deltas (${deltas}) ${flag}</li>`;
  }).join('');
  return `<ul class="whatif">${entries}</ul>`;
}
