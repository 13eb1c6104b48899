// Parameter metadata for the modification schemes the service exposes.
// The studio builds its request bodies from these tables; it never
// computes geometry from them.

export interface NumberParam {
  id: string;
  label: string;
  kind: 'number';
  min: number;
  max: number;
  step: number;
  initial: number;
}

export interface ListParam {
  id: string;
  label: string;
  kind: 'list';
  lengthFor: (degree: number) => number;
  fill: number;
}

export type ParamMeta = NumberParam | ListParam;

export interface SweepMeta {
  param: string; // swept over (-pi, pi] for the family overlay
  asList: boolean;
  needsDegree?: number;
}

export interface SchemeMeta {
  id: string;
  label: string;
  params: ParamMeta[];
  sweep?: SweepMeta;
}

const PI = Math.PI;

export const PERTURB_SCHEMES: SchemeMeta[] = [
  {
    id: 'equal-magnitude-legendre',
    label: 'equal magnitude (Legendre)',
    params: [
      { id: 'rhos', label: 'magnitudes', kind: 'list', lengthFor: (d) => d + 1, fill: 0.1 },
      { id: 'phis', label: 'angles', kind: 'list', lengthFor: (d) => d + 1, fill: 0 },
    ],
  },
  {
    id: 'equal-magnitude-bernstein',
    label: 'equal magnitude (Bernstein)',
    params: [
      { id: 'rs', label: 'magnitudes', kind: 'list', lengthFor: (d) => d + 1, fill: 0.1 },
      { id: 'phis', label: 'angles', kind: 'list', lengthFor: (d) => d + 1, fill: 0 },
    ],
  },
  {
    id: 'tangent-preserving-bernstein',
    label: 'tangents kept (Bernstein)',
    params: [
      { id: 'r', label: 'end magnitude r', kind: 'number', min: 0, max: 2, step: 0.01, initial: 0.1 },
      { id: 'interior_phis', label: 'interior angles', kind: 'list', lengthFor: (d) => Math.max(d - 1, 0), fill: 0 },
    ],
    sweep: { param: 'interior_phis', asList: true, needsDegree: 2 },
  },
  {
    id: 'tangent-preserving-legendre',
    label: 'tangents kept (Legendre)',
    params: [
      { id: 'rho', label: 'magnitude rho', kind: 'number', min: 0, max: 2, step: 0.01, initial: 0.25 },
      { id: 'phi0', label: 'phi0', kind: 'number', min: -PI, max: PI, step: 0.01, initial: 0 },
    ],
  },
  {
    id: 'endpoint-equal-angle',
    label: 'end points kept, equal angle',
    params: [
      { id: 'd', label: 'norm d', kind: 'number', min: 0, max: 20, step: 0.01, initial: 0.1 },
      { id: 'phi', label: 'phi', kind: 'number', min: -PI, max: PI, step: 0.01, initial: 0 },
    ],
    sweep: { param: 'phi', asList: false },
  },
  {
    id: 'endpoints-tangents-quintic',
    label: 'end points and tangents kept (quintic)',
    params: [
      { id: 'r', label: 'end magnitude r', kind: 'number', min: -2, max: 2, step: 0.01, initial: 0.2 },
    ],
  },
];

// Arc-length growth is its own mode with its own endpoint.
export const ARC_LENGTH = 'arc-length';

export const ARC_LENGTH_PARAMS = {
  delta_s: { min: -1, max: 1, step: 0.001, initial: 0.01 },
  fixed: { initial: '4=0, 5=0' },
  starts: { min: 8, max: 2048, step: 8, initial: 256 },
};

export function schemeMeta(id: string): SchemeMeta | undefined {
  return PERTURB_SCHEMES.find((s) => s.id === id);
}

export function defaultParams(meta: SchemeMeta, degree: number): Record<string, number | number[]> {
  const out: Record<string, number | number[]> = {};
  for (const p of meta.params) {
    out[p.id] = p.kind === 'number' ? p.initial : new Array(p.lengthFor(degree)).fill(p.fill);
  }
  return out;
}

// Grid over (-pi, pi], one point per family member.
export function buildSweepGrid(sweep: SweepMeta, n: number): Record<string, number | number[]>[] {
  return Array.from({ length: n }, (_, k) => {
    const phi = -PI + (2 * PI * (k + 1)) / n;
    return { [sweep.param]: sweep.asList ? [phi] : phi };
  });
}
