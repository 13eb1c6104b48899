import { describe, expect, it } from 'vitest';
import {
  SESSION_KEY,
  clampSelected,
  defaultState,
  loadSession,
  restoreSession,
  saveSession,
  serializeSession,
} from '../src/session.js';
import type { PerturbResponse } from '../src/types.js';
import { MemoryStorage } from './util.js';

describe('session state', () => {
  it('serialize then restore is the identity', () => {
    const state = defaultState();
    state.budget = 0.25;
    state.readouts.norm = 0.10265873182190703;
    state.svg = '<svg>x</svg>';
    state.thumbs = ['<svg>a</svg>', null];
    const back = restoreSession(serializeSession(state));
    expect(back).toEqual(state);
  });

  it('round trips through storage', () => {
    const storage = new MemoryStorage();
    const state = defaultState();
    state.familySize = 36;
    saveSession(storage, state);
    expect(storage.getItem(SESSION_KEY)).not.toBeNull();
    expect(loadSession(storage)).toEqual(state);
  });

  it('rejects garbage', () => {
    expect(restoreSession(null)).toBeNull();
    expect(restoreSession('')).toBeNull();
    expect(restoreSession('{nope')).toBeNull();
    expect(restoreSession('42')).toBeNull();
    expect(restoreSession(JSON.stringify({ fixture: 3 }))).toBeNull();
    const noCurve = { ...defaultState(), currentCurve: { version: 1 } };
    expect(restoreSession(JSON.stringify(noCurve))).toBeNull();
  });

  it('clamps the selected solution into range', () => {
    const state = defaultState();
    state.solutions = { scheme: 's', count: 2, solutions: [] } as unknown as PerturbResponse;
    state.selectedSolution = 5;
    clampSelected(state);
    expect(state.selectedSolution).toBe(1);
    state.selectedSolution = -2;
    clampSelected(state);
    expect(state.selectedSolution).toBe(0);
    const restored = restoreSession(
      serializeSession({ ...state, selectedSolution: 99 }),
    );
    expect(restored?.selectedSolution).toBe(1);
  });

  it('save tolerates a broken storage', () => {
    const broken = new MemoryStorage();
    broken.setItem = () => {
      throw new Error('full');
    };
    expect(() => saveSession(broken, defaultState())).not.toThrow();
  });
});
