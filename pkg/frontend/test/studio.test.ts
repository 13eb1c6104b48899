import { afterEach, describe, expect, inject, it } from 'vitest';
import { ApiClient } from '../src/api.js';
import { fmt } from '../src/format.js';
import { ARC_LENGTH } from '../src/schemes.js';
import { SESSION_KEY } from '../src/session.js';
import { Studio } from '../src/studio.js';
import { MemoryStorage, requestsTo, responseNumbers } from './util.js';

// These tests drive the studio against the live service started by the
// global setup.  All numeric assertions therefore check what the service
// actually returned, and the client log doubles as a provenance record.

function makeStudio(storage: Storage | null = new MemoryStorage()) {
  const root = document.createElement('div');
  document.body.appendChild(root);
  const api = new ApiClient(inject('apiBase'));
  const studio = new Studio({ root, api, storage, debounceMs: 20 });
  return { root, api, storage, studio };
}

function text(root: HTMLElement, id: string): string {
  const el = root.querySelector(`#${id}`);
  if (!el) throw new Error(`missing #${id}`);
  return (el.textContent ?? '').trim();
}

afterEach(() => {
  document.body.innerHTML = '';
});

describe('studio with the live service', () => {
  it('initial load solves the default scheme and shows both solutions', async () => {
    const { root, studio } = makeStudio();
    await studio.idle();

    const items = root.querySelectorAll('li.solution');
    expect(items.length).toBe(2);
    expect(text(root, 'ro-count')).toBe('2');
    expect(text(root, 'ro-norm')).toBe('0.102659');
    expect(items[0].textContent).toContain('0.102659');
    expect(items[1].textContent).toContain('1.802944');
    expect(items[0].classList.contains('selected')).toBe(true);

    // budget 0.5 vs norm 0.102659: inside the budget
    expect(text(root, 'ro-budget-state')).toBe('within budget');
    expect(root.querySelector('#ro-meter')!.classList.contains('over')).toBe(false);
    expect(text(root, 'ro-arc-before')).not.toBe('n/a');
    expect(text(root, 'ro-arc-after')).not.toBe('n/a');
    expect(studio.state.svg).toContain('svg');
  });

  it('every displayed number comes from a service response', async () => {
    const { root, api, studio } = makeStudio();
    await studio.idle();
    (root.querySelector('li.solution[data-index="1"]') as HTMLElement).click();
    await studio.idle();

    const numbers = responseNumbers(api);
    for (const id of ['ro-norm', 'ro-distance', 'ro-arc-before', 'ro-arc-after']) {
      const shown = text(root, id);
      expect(shown).not.toBe('n/a');
      expect(numbers.some((x) => fmt(x) === shown), `${id}=${shown}`).toBe(true);
    }
    for (const label of root.querySelectorAll('li.solution .label')) {
      const m = (label.textContent ?? '').match(/[\d.]+/g) ?? [];
      for (const token of m.filter((t) => t.includes('.'))) {
        expect(numbers.some((x) => fmt(x) === token), token).toBe(true);
      }
    }
    // the drawn picture is a response body verbatim
    const renders = requestsTo(api, '/api/render').filter((e) => !e.discarded && e.status === 200);
    expect(renders.some((e) => e.response === studio.state.svg)).toBe(true);
    // nothing was asked of anyone but the service
    expect(api.log.every((e) => e.path.startsWith('/api/'))).toBe(true);
  });

  it('r = 0 collapses the first solution onto the original curve', async () => {
    const { root, studio } = makeStudio();
    await studio.idle();
    studio.setNumberParam('r', 0);
    await studio.idle();
    expect(text(root, 'ro-norm')).toBe('0.000000');
    expect(text(root, 'ro-distance')).toBe('0.000000');
  });

  it('selecting the large solution flips the budget meter', async () => {
    const { root, api, studio } = makeStudio();
    await studio.idle();
    (root.querySelector('li.solution[data-index="1"]') as HTMLElement).click();
    await studio.idle();

    expect(text(root, 'ro-norm')).toBe('1.802944');
    expect(text(root, 'ro-budget-state')).toBe('over budget');
    expect(root.querySelector('#ro-meter')!.classList.contains('over')).toBe(true);
    const selected = root.querySelector('li.solution.selected') as HTMLElement;
    expect(selected.dataset['index']).toBe('1');
    expect(selected.querySelector('.badge.over')).not.toBeNull();

    // raising the budget is a pure repaint, no request
    const before = api.log.length;
    studio.setBudget(2.0);
    expect(api.log.length).toBe(before);
    expect(text(root, 'ro-budget')).toBe('2.000000');
    expect(text(root, 'ro-budget-state')).toBe('within budget');
  });

  it('rapid edits within the debounce window collapse to one request', async () => {
    const { api, studio } = makeStudio();
    await studio.idle();
    const path = '/api/perturb/endpoints-tangents-quintic';
    const before = requestsTo(api, path).length;
    studio.setNumberParam('r', 0.3);
    studio.setNumberParam('r', 0.4);
    await studio.idle();
    const solves = requestsTo(api, path);
    expect(solves.length).toBe(before + 1);
    const body = solves[solves.length - 1].body as { params: { r: number } };
    expect(body.params.r).toBe(0.4);
  });

  it('the envelope button issues one family request and renders every member', async () => {
    const { root, api, studio } = makeStudio();
    await studio.idle();
    studio.loadFixture('quintic_canonical_a');
    studio.setScheme('endpoint-equal-angle');
    studio.setFamilySize(36);
    await studio.idle();

    expect(requestsTo(api, '/api/sample-family').length).toBe(0);
    (root.querySelector('#envelope-btn') as HTMLButtonElement).click();
    await studio.idle();

    const famRequests = requestsTo(api, '/api/sample-family');
    expect(famRequests.length).toBe(1);
    expect(studio.state.family?.count).toBe(72); // two admissible curves per phi
    const renders = requestsTo(api, '/api/render').filter((e) => {
      const body = e.body as { curves?: unknown[] };
      return Array.isArray(body.curves) && body.curves.length > 2;
    });
    // original + selected + 72 family members in a single picture
    expect(renders.length).toBe(1);
    expect((renders[0].body as { curves: unknown[] }).curves.length).toBe(74);
    expect(renders[0].status).toBe(200);
    expect(studio.state.svg).toBe(renders[0].response);
    // one polyline per drawn curve (control polygons are off)
    expect((studio.state.svg!.match(/<polyline /g) ?? []).length).toBe(74);
  });

  it('a solver-empty response shows the diagnostics payload', async () => {
    const { root, studio } = makeStudio();
    await studio.idle();
    studio.loadFixture('quintic_canonical_a');
    studio.setScheme('endpoint-equal-angle');
    await studio.idle();
    studio.setNumberParam('d', 10);
    await studio.idle();

    const empty = root.querySelector('#status .empty-result');
    expect(empty?.textContent).toBe('no admissible modification');
    const diag = root.querySelector('#status pre.diagnostics');
    expect(diag?.textContent).toContain('solution_count');
    expect(text(root, 'ro-count')).toBe('0');
    expect(root.querySelectorAll('li.solution').length).toBe(0);
  });

  it('field errors highlight the offending input', async () => {
    const { root, studio } = makeStudio();
    await studio.idle();

    // local parse failure in the fixed-entries text field; the scheme
    // switch and the bad text share one debounce window, so the refresh
    // fails before any request goes out
    studio.setScheme(ARC_LENGTH);
    studio.setFixedText('4=zero');
    await studio.idle();
    expect(root.querySelector('#status .error-text')).not.toBeNull();
    const fixedInput = root.querySelector('[data-param="fixed"]');
    expect(fixedInput?.classList.contains('field-error')).toBe(true);

    // a document the service rejects highlights the curve editor
    studio.setScheme('endpoints-tangents-quintic');
    studio.importCurve(
      JSON.stringify({
        version: 1,
        p0: [0, 0],
        preimage: { basis: 'bernstein', degree: 1, coefficients: [[1, 2]] },
      }),
    );
    await studio.idle();
    expect(root.querySelector('#status .error-text')).not.toBeNull();
    expect(root.querySelector('#doc-json')?.classList.contains('field-error')).toBe(true);
  });

  it('arc-length mode solves, reads back residuals, and draws the pre-images', async () => {
    const { root, api, studio } = makeStudio();
    await studio.idle();
    studio.setScheme(ARC_LENGTH);
    studio.setNumberParam('starts', 64);
    await studio.idle();

    expect(requestsTo(api, '/api/arclen').length).toBe(1);
    const count = Number(text(root, 'ro-count'));
    expect(count).toBeGreaterThan(0);
    expect(text(root, 'ro-distance')).toBe('n/a');
    expect(text(root, 'ro-arc-before')).not.toBe('n/a');
    expect(text(root, 'ro-arc-after')).not.toBe('n/a');
    const residual = text(root, 'ro-residual');
    expect(residual).toMatch(/e[+-]\d+$/);
    const numbers = responseNumbers(api);
    expect(numbers.some((x) => x.toExponential(3) === residual)).toBe(true);
    // thumbnails come from rendering the returned pre-image documents
    expect(root.querySelectorAll('li.solution .thumb svg').length).toBe(count);
  });

  it('export then import round-trips the current document', async () => {
    const { root, studio } = makeStudio();
    await studio.idle();
    const textOut = studio.exportCurve();
    expect((root.querySelector('#doc-json') as HTMLTextAreaElement).value).toBe(textOut);
    studio.importCurve(textOut);
    await studio.idle();
    expect(studio.state.fixture).toBe('imported');
    expect((root.querySelector('#fixture-select') as HTMLSelectElement).value).toBe('imported');
    expect(text(root, 'ro-count')).toBe('2');
    expect(text(root, 'ro-norm')).toBe('0.102659');
  });

  it('overlay toggles re-render without re-solving', async () => {
    const { api, studio } = makeStudio();
    await studio.idle();
    const solvePath = '/api/perturb/endpoints-tangents-quintic';
    const solvesBefore = requestsTo(api, solvePath).length;
    const rendersBefore = requestsTo(api, '/api/render').length;
    studio.setOverlay('controlPolygons', true);
    await studio.idle();
    expect(requestsTo(api, solvePath).length).toBe(solvesBefore);
    const renders = requestsTo(api, '/api/render');
    expect(renders.length).toBe(rendersBefore + 1);
    expect((renders[renders.length - 1].body as { show_controls: boolean }).show_controls).toBe(true);
  });

  it('a reload restores the session exactly, with zero requests', async () => {
    const storage = new MemoryStorage();
    const first = makeStudio(storage);
    await first.studio.idle();
    (first.root.querySelector('li.solution[data-index="1"]') as HTMLElement).click();
    await first.studio.idle();
    first.studio.setBudget(1.0);

    const saved = storage.getItem(SESSION_KEY);
    expect(saved).not.toBeNull();
    const readouts = ['ro-norm', 'ro-distance', 'ro-arc-before', 'ro-arc-after', 'ro-count'];
    const want = readouts.map((id) => text(first.root, id));
    const wantView = first.root.querySelector('#view')!.innerHTML;

    const second = makeStudio(storage);
    await second.studio.idle();
    expect(second.api.log.length).toBe(0);
    expect(second.studio.state).toEqual(first.studio.state);
    expect(readouts.map((id) => text(second.root, id))).toEqual(want);
    expect(second.root.querySelector('#view')!.innerHTML).toBe(wantView);
    expect(second.root.querySelectorAll('li.solution').length).toBe(2);
    const selected = second.root.querySelector('li.solution.selected') as HTMLElement;
    expect(selected.dataset['index']).toBe('1');
  });
});
