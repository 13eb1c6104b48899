import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';
import { Debouncer } from '../src/debounce.js';

describe('Debouncer', () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it('fires once, trailing, after the wait', () => {
    const deb = new Debouncer<string>(50);
    const calls: number[] = [];
    deb.debounce('k', () => calls.push(1));
    deb.debounce('k', () => calls.push(2));
    deb.debounce('k', () => calls.push(3));
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(49);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([3]);
    expect(deb.size).toBe(0);
  });

  it('keys are independent', () => {
    const deb = new Debouncer<string>(50);
    const calls: string[] = [];
    deb.debounce('a', () => calls.push('a'));
    deb.debounce('b', () => calls.push('b'));
    expect(deb.size).toBe(2);
    vi.advanceTimersByTime(50);
    expect(calls.sort()).toEqual(['a', 'b']);
  });

  it('a new call restarts the wait', () => {
    const deb = new Debouncer<string>(50);
    const calls: number[] = [];
    deb.debounce('k', () => calls.push(1));
    vi.advanceTimersByTime(40);
    deb.debounce('k', () => calls.push(2));
    vi.advanceTimersByTime(40);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(10);
    expect(calls).toEqual([2]);
  });

  it('cancel drops the pending call', () => {
    const deb = new Debouncer<string>(50);
    const calls: number[] = [];
    deb.debounce('k', () => calls.push(1));
    deb.cancel('k');
    vi.advanceTimersByTime(100);
    expect(calls).toEqual([]);
    deb.debounce('x', () => calls.push(2));
    deb.cancelAll();
    vi.advanceTimersByTime(100);
    expect(calls).toEqual([]);
    expect(deb.size).toBe(0);
  });
});
