/**
 * Wire types mirroring the division service's JSON bodies.
 *
 * Numbers may arrive as "p/q" strings when the backend runs in exact
 * mode; Num covers both.
 */

export type Num = number | string;

export interface ItemSpec {
  name: string;
  quantity: Num;
}

export interface ProblemDocument {
  agents: string[];
  items: ItemSpec[];
  utilities: Num[][];
  rule?: string;
  mode?: 'float' | 'exact';
}

export type Classification = 'positive' | 'negative' | 'null';

export interface KktSummary {
  passed: boolean;
  max_budget_residual: number;
  max_demand_residual: number;
}

export interface FairnessSummary {
  envy_free: boolean;
  worst_envy_margin: number;
  fair_share: boolean;
  worst_share_margin: number;
  efficient: boolean;
  weak_core: boolean | null;
}

export interface DivisionJson {
  allocation: Num[][];
  price: Num[];
  budget: -1 | 0 | 1;
}

export interface SolveResponse {
  rule: string;
  classification: Classification;
  margin: number;
  profiles: Num[][];
  allocations: Num[][][];
  selected: number;
  exhaustive: boolean;
  agents: string[];
  items: string[];
  divisions?: DivisionJson[];
  kkt?: KktSummary;
  fairness: FairnessSummary;
  nash_products?: number[];
}

export interface ApiError {
  error: string;
}

/** Parse a wire number ("p/q" or plain) into a float for display math. */
export function asNumber(value: Num): number {
  if (typeof value === 'number') return value;
  const parts = value.split('/');
  if (parts.length === 2) return Number(parts[0]) / Number(parts[1]);
  return Number(value);
}
