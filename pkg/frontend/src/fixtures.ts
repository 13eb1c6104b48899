import type { CurveDocument } from './types.js';

// Curve documents copied verbatim from the service's shipped fixture files.
export const FIXTURES: Record<string, CurveDocument> = {
  cubic: {
    version: 1,
    preimage: {
      basis: 'bernstein',
      degree: 1,
      coeffs: [
        [5.0, 2.0],
        [-3.0, -5.0],
      ],
    },
    p0: [0.0, 0.0],
    metadata: { label: 'cubic with quadratic hodograph, arc length 38/3' },
  },
  cubic_canonical: {
    version: 1,
    preimage: {
      basis: 'bernstein',
      degree: 1,
      coeffs: [
        [1.9668302043215573, -0.84292723042352435],
        [-2.2478059477960652, -0.56195148694901653],
      ],
    },
    p0: [0.0, 0.0],
    metadata: { label: 'canonical form of the reference cubic' },
  },
  quintic_free: {
    version: 1,
    preimage: {
      basis: 'bernstein',
      degree: 2,
      coeffs: [
        [5.0, 2.0],
        [-3.0, -4.0],
        [5.0, 1.0],
      ],
    },
    p0: [0.0, 0.0],
    metadata: { label: 'non-canonical quintic for free perturbation studies' },
  },
  quintic_canonical_a: {
    version: 1,
    preimage: {
      basis: 'legendre',
      degree: 2,
      coeffs: [
        [2.0, -1.0],
        [1.0, 2.0],
        [-1.0, 0.0],
      ],
    },
    p0: [0.0, 0.0],
    metadata: { label: 'elongated canonical quintic, arc length 11' },
  },
  quintic_canonical_b: {
    version: 1,
    preimage: {
      basis: 'bernstein',
      degree: 2,
      coeffs: [
        [1.4142135623730951, 0.70710678118654757],
        [0.30566710244441131, -1.5757019788802569],
        [1.4142135623730951, 0.70710678118654757],
      ],
    },
    p0: [0.0, 0.0],
    metadata: { label: 'symmetric canonical quintic, arc length 1.23740482' },
  },
  line: {
    version: 1,
    preimage: {
      basis: 'bernstein',
      degree: 0,
      coeffs: [[1.0, 0.0]],
    },
    p0: [0.0, 0.0],
    metadata: { label: 'unit-speed straight segment' },
  },
};

export const FIXTURE_NAMES = Object.keys(FIXTURES);
