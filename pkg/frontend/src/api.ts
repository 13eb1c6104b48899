import type { SolverEmptyFailure, ValidationFailure } from './types.js';

// Every request carries a global sequence number and a per-control key.
// A response is applied only if no later response for the same key has
// been applied already; superseded responses come back as 'stale' and are
// marked discarded in the log.  The log records the full request and
// response bodies, which is what lets tests prove that every displayed
// number originated from a service response.

export type ApiOutcome<T> =
  | { kind: 'ok'; seq: number; value: T }
  | { kind: 'validation'; seq: number; failure: ValidationFailure }
  | { kind: 'empty'; seq: number; failure: SolverEmptyFailure }
  | { kind: 'network'; seq: number; error: string }
  | { kind: 'stale'; seq: number };

export interface LogEntry {
  seq: number;
  key: string;
  method: 'GET' | 'POST';
  path: string;
  body: unknown;
  status: number | null;
  response: unknown;
  discarded: boolean;
}

export class ApiClient {
  readonly log: LogEntry[] = [];
  private seq = 0;
  private applied = new Map<string, number>();

  constructor(
    public baseUrl = '',
    private fetchImpl: typeof fetch = globalThis.fetch.bind(globalThis),
  ) {}

  async postJson<T>(key: string, path: string, body: unknown): Promise<ApiOutcome<T>> {
    return this.request<T>(key, path, body, false);
  }

  async postSvg(key: string, path: string, body: unknown): Promise<ApiOutcome<string>> {
    return this.request<string>(key, path, body, true);
  }

  private async request<T>(
    key: string,
    path: string,
    body: unknown,
    expectSvg: boolean,
  ): Promise<ApiOutcome<T>> {
    const seq = ++this.seq;
    const entry: LogEntry = {
      seq,
      key,
      method: 'POST',
      path,
      body,
      status: null,
      response: null,
      discarded: false,
    };
    this.log.push(entry);

    let status: number;
    let payload: unknown;
    try {
      const resp = await this.fetchImpl(this.baseUrl + path, {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      });
      status = resp.status;
      const text = await resp.text();
      payload = expectSvg && status === 200 ? text : JSON.parse(text);
    } catch (err) {
      entry.status = null;
      entry.response = String(err);
      if (this.supersede(key, seq)) entry.discarded = true;
      return entry.discarded
        ? { kind: 'stale', seq }
        : { kind: 'network', seq, error: String(err) };
    }

    entry.status = status;
    entry.response = payload;
    if (this.supersede(key, seq)) {
      entry.discarded = true;
      return { kind: 'stale', seq };
    }

    if (status === 200) return { kind: 'ok', seq, value: payload as T };
    if (status === 400) return { kind: 'validation', seq, failure: payload as ValidationFailure };
    if (status === 422) return { kind: 'empty', seq, failure: payload as SolverEmptyFailure };
    return { kind: 'network', seq, error: `unexpected status ${status}` };
  }

  // true if a later response for this key was already applied
  private supersede(key: string, seq: number): boolean {
    const latest = this.applied.get(key);
    if (latest !== undefined && latest > seq) return true;
    this.applied.set(key, seq);
    return false;
  }
}
