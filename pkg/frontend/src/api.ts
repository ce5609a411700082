/**
 * Thin client for the division service.
 *
 * One in-flight solve at a time: issuing a new request aborts the previous
 * one, so stale responses can never overwrite newer state.
 */

import type { ProblemDocument, SolveResponse } from './types.js';

export class ApiClient {
  private controller: AbortController | null = null;

  constructor(private baseUrl: string = '',
              private fetchFn: typeof fetch = fetch.bind(globalThis)) {}

  async solve(doc: ProblemDocument): Promise<SolveResponse> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const response = await this.fetchFn(`${this.baseUrl}/api/solve`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(doc),
      signal: controller.signal,
    });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiRequestError(response.status, body?.error ?? 'request failed');
    }
    return body as SolveResponse;
  }

  async demos(): Promise<string[]> {
    const response = await this.fetchFn(`${this.baseUrl}/api/demos`);
    const body = await response.json();
    return body.demos as string[];
  }
}

export class ApiRequestError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = 'ApiRequestError';
  }
}
