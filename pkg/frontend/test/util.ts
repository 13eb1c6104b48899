import type { ApiClient } from '../src/api.js';

// Storage double so each test gets an isolated session store.
export class MemoryStorage implements Storage {
  private map = new Map<string, string>();

  get length(): number {
    return this.map.size;
  }

  clear(): void {
    this.map.clear();
  }

  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }

  key(index: number): string | null {
    return [...this.map.keys()][index] ?? null;
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }

  setItem(key: string, value: string): void {
    this.map.set(key, String(value));
  }
}

export function collectNumbers(value: unknown, out: number[] = []): number[] {
  if (typeof value === 'number') {
    out.push(value);
  } else if (Array.isArray(value)) {
    for (const v of value) collectNumbers(v, out);
  } else if (typeof value === 'object' && value !== null) {
    for (const v of Object.values(value)) collectNumbers(v, out);
  }
  return out;
}

// Every number that appeared in a non-discarded JSON response body.
export function responseNumbers(api: ApiClient): number[] {
  const out: number[] = [];
  for (const entry of api.log) {
    if (entry.discarded || typeof entry.response === 'string') continue;
    collectNumbers(entry.response, out);
  }
  return out;
}

export function requestsTo(api: ApiClient, path: string) {
  return api.log.filter((entry) => entry.path === path);
}
