import type { ArclenResponse, CurveDocument, FamilyResponse, PerturbResponse } from './types.js';
import { FIXTURES } from './fixtures.js';
import { ARC_LENGTH, ARC_LENGTH_PARAMS, PERTURB_SCHEMES, defaultParams } from './schemes.js';

export interface Overlays {
  original: boolean;
  perturbed: boolean;
  family: boolean;
  controlPolygons: boolean;
  align: boolean;
}

// Raw numbers lifted from service responses, formatted only at paint time.
export interface ReadoutNumbers {
  norm: number | null;
  distance: number | null;
  arcBefore: number | null;
  arcAfter: number | null;
  residual: number | null;
}

export type ParamStore = Record<string, number | number[] | string>;

export interface SessionState {
  fixture: string;
  currentCurve: CurveDocument;
  scheme: string; // perturb scheme id or 'arc-length'
  parameters: Record<string, ParamStore>;
  budget: number;
  familySize: number;
  solutions: PerturbResponse | ArclenResponse | null;
  family: FamilyResponse | null;
  selectedSolution: number;
  overlays: Overlays;
  readouts: ReadoutNumbers;
  svg: string | null;
  thumbs: (string | null)[];
}

export const SESSION_KEY = 'phforge-studio-session';

export function defaultState(): SessionState {
  const fixture = 'quintic_canonical_b';
  const curve = FIXTURES[fixture];
  const parameters: Record<string, ParamStore> = {};
  for (const meta of PERTURB_SCHEMES) {
    parameters[meta.id] = defaultParams(meta, curve.preimage.degree);
  }
  parameters[ARC_LENGTH] = {
    delta_s: ARC_LENGTH_PARAMS.delta_s.initial,
    fixed: ARC_LENGTH_PARAMS.fixed.initial,
    starts: ARC_LENGTH_PARAMS.starts.initial,
  };
  return {
    fixture,
    currentCurve: curve,
    scheme: 'endpoints-tangents-quintic',
    parameters,
    budget: 0.5,
    familySize: 72,
    solutions: null,
    family: null,
    selectedSolution: 0,
    overlays: { original: true, perturbed: true, family: true, controlPolygons: false, align: false },
    readouts: { norm: null, distance: null, arcBefore: null, arcAfter: null, residual: null },
    svg: null,
    thumbs: [],
  };
}

export function solutionCount(state: SessionState): number {
  return state.solutions ? state.solutions.count : 0;
}

export function clampSelected(state: SessionState): void {
  const n = solutionCount(state);
  if (state.selectedSolution >= n) state.selectedSolution = Math.max(n - 1, 0);
  if (state.selectedSolution < 0) state.selectedSolution = 0;
}

export function serializeSession(state: SessionState): string {
  return JSON.stringify(state);
}

export function restoreSession(text: string | null): SessionState | null {
  if (!text) return null;
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof raw !== 'object' || raw === null) return null;
  const base = defaultState();
  const st = { ...base, ...(raw as Record<string, unknown>) } as SessionState;
  if (typeof st.fixture !== 'string' || typeof st.scheme !== 'string') return null;
  if (typeof st.currentCurve !== 'object' || st.currentCurve === null) return null;
  if (!st.currentCurve.preimage || !Array.isArray(st.currentCurve.preimage.coeffs)) return null;
  if (typeof st.parameters !== 'object' || st.parameters === null) return null;
  if (typeof st.budget !== 'number' || typeof st.familySize !== 'number') return null;
  st.overlays = { ...base.overlays, ...st.overlays };
  st.readouts = { ...base.readouts, ...st.readouts };
  if (!Array.isArray(st.thumbs)) st.thumbs = [];
  if (typeof st.selectedSolution !== 'number') st.selectedSolution = 0;
  clampSelected(st);
  return st;
}

export function saveSession(storage: Storage | null, state: SessionState): void {
  if (!storage) return;
  try {
    storage.setItem(SESSION_KEY, serializeSession(state));
  } catch {
    // storage full or unavailable; the session just won't persist
  }
}

export function loadSession(storage: Storage | null): SessionState | null {
  if (!storage) return null;
  try {
    return restoreSession(storage.getItem(SESSION_KEY));
  } catch {
    return null;
  }
}
