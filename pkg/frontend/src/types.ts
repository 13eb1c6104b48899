// Shapes mirrored from the phforge HTTP API payloads.

export type Pair = [number, number];

export interface PreimageDoc {
  basis: 'bernstein' | 'legendre';
  degree: number;
  coeffs: Pair[];
}

export interface CurveDocument {
  version: number;
  preimage: PreimageDoc;
  p0: Pair;
  metadata: Record<string, unknown>;
}

export interface InfoResponse {
  basis: string;
  degree: number;
  curve_degree: number;
  norm: number;
  arc_length: number;
  canonical: { is_canonical: boolean; residual: number };
  ph_check: { is_ph: boolean; residual: number };
  endpoints: Pair[];
  metadata: Record<string, unknown>;
}

export interface PerturbSolution {
  norm: number;
  flags: string[];
  delta_legendre: Pair[];
  delta_bernstein: Pair[];
  preimage: CurveDocument;
  curve: {
    controls: Pair[];
    curve_distance: number;
    control_displacements: Pair[];
  };
}

export interface PerturbResponse {
  scheme: string;
  count: number;
  solutions: PerturbSolution[];
}

export interface ArclenSolution {
  gamma: number[];
  gamma_free: number[];
  free_indices: number[];
  norm: number;
  residual: number;
  delta_legendre: Pair[];
  arc_length_after: number;
  preimage: CurveDocument;
  controls: Pair[];
}

export interface ArclenResponse {
  arc_length_before: number;
  delta_s: number;
  count: number;
  solutions: ArclenSolution[];
  diagnostics: { starts_used: number; converged_fraction: number };
}

export interface FamilyMember {
  grid_index: number;
  point: Record<string, unknown>;
  norm: number;
  curve_distance: number;
}

export interface FamilyResponse {
  scheme: string;
  count: number;
  aligned: boolean;
  curves: CurveDocument[];
  members: FamilyMember[];
}

// 400: a named request field is bad; 422: the solve came back empty.
export interface ValidationFailure {
  error: string;
  path: string;
}

export interface SolverEmptyFailure {
  error: string;
  diagnostics: Record<string, unknown>;
}
