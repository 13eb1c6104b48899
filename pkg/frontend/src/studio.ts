import { ApiClient } from './api.js';
import { Debouncer } from './debounce.js';
import { FIXTURES, FIXTURE_NAMES } from './fixtures.js';
import { fmt } from './format.js';
import {
  ARC_LENGTH,
  ARC_LENGTH_PARAMS,
  PERTURB_SCHEMES,
  buildSweepGrid,
  defaultParams,
  schemeMeta,
} from './schemes.js';
import {
  SessionState,
  clampSelected,
  defaultState,
  loadSession,
  saveSession,
  solutionCount,
} from './session.js';
import type {
  ArclenResponse,
  ArclenSolution,
  CurveDocument,
  FamilyResponse,
  InfoResponse,
  PerturbResponse,
  PerturbSolution,
  SolverEmptyFailure,
} from './types.js';

export interface StudioOptions {
  root: HTMLElement;
  api: ApiClient;
  storage?: Storage | null;
  debounceMs?: number;
  samples?: number;
}

interface StatusLine {
  kind: 'idle' | 'error' | 'empty' | 'network';
  message: string;
  diagnostics: string | null;
  field: string | null;
}

const OK_STATUS: StatusLine = { kind: 'idle', message: '', diagnostics: null, field: null };

// Single-page controller: every edit issues a request, every displayed
// number is lifted from a response, rendering consumes the service's SVG
// as-is.  State is serialized to storage after each applied change so a
// reload restores the session exactly.
export class Studio {
  state: SessionState;
  readonly api: ApiClient;
  private root: HTMLElement;
  private storage: Storage | null;
  private deb: Debouncer<string>;
  private samples: number;
  private pending = new Set<Promise<unknown>>();
  private status: StatusLine = OK_STATUS;

  constructor(opts: StudioOptions) {
    this.root = opts.root;
    this.api = opts.api;
    this.storage = opts.storage === undefined ? null : opts.storage;
    this.deb = new Debouncer(opts.debounceMs ?? 50);
    this.samples = opts.samples ?? 128;
    const restored = loadSession(this.storage);
    this.state = restored ?? defaultState();
    this.buildSkeleton();
    this.buildParamInputs();
    this.paint();
    if (!restored) this.queueRefresh();
  }

  // ---------- public actions ----------

  loadFixture(name: string): void {
    if (!(name in FIXTURES)) return;
    this.state.fixture = name;
    this.state.currentCurve = FIXTURES[name];
    this.resetSolutions();
    this.resetParamLengths();
    this.buildParamInputs();
    this.paint();
    this.queueRefresh();
  }

  setScheme(id: string): void {
    if (id !== ARC_LENGTH && !schemeMeta(id)) return;
    this.state.scheme = id;
    this.resetSolutions();
    this.buildParamInputs();
    this.paint();
    this.queueRefresh();
  }

  setNumberParam(id: string, value: number): void {
    const store = this.paramStore();
    const meta = this.numberMeta(id);
    if (meta) value = Math.min(meta.max, Math.max(meta.min, value));
    store[id] = value;
    this.queueRefresh();
  }

  setListParam(id: string, text: string): void {
    const parts = text.split(',').map((s) => Number.parseFloat(s.trim()));
    if (parts.some((v) => Number.isNaN(v))) {
      this.setStatus({ kind: 'error', message: `${id}: not a number list`, diagnostics: null, field: id });
      this.paint();
      return;
    }
    this.paramStore()[id] = parts;
    this.queueRefresh();
  }

  setFixedText(text: string): void {
    this.paramStore()[`fixed`] = text;
    this.queueRefresh();
  }

  setBudget(value: number): void {
    this.state.budget = Math.max(value, 0);
    this.paint();
    this.save();
  }

  setFamilySize(value: number): void {
    this.state.familySize = Math.min(360, Math.max(4, Math.round(value)));
    this.save();
  }

  setOverlay(flag: keyof SessionState['overlays'], on: boolean): void {
    this.state.overlays[flag] = on;
    const p = this.track(
      this.renderMain().then(() => {
        this.paint();
        this.save();
      }),
    );
    void p.catch(() => {});
  }

  selectSolution(k: number): void {
    if (k < 0 || k >= solutionCount(this.state)) return;
    this.state.selectedSolution = k;
    this.applySelectionReadouts();
    const p = this.track(
      Promise.all([this.fetchArcAfter(), this.renderMain()]).then(() => {
        this.paint();
        this.save();
      }),
    );
    void p.catch(() => {});
  }

  runFamily(): void {
    const p = this.track(this.familyNow());
    void p.catch(() => {});
  }

  clearFamily(): void {
    this.state.family = null;
    const p = this.track(
      this.renderMain().then(() => {
        this.paint();
        this.save();
      }),
    );
    void p.catch(() => {});
  }

  exportCurve(): string {
    const text = JSON.stringify(this.state.currentCurve, null, 2);
    const area = this.el<HTMLTextAreaElement>('doc-json');
    area.value = text;
    return text;
  }

  importCurve(text: string): void {
    let doc: CurveDocument;
    try {
      doc = JSON.parse(text);
    } catch (err) {
      this.setStatus({ kind: 'error', message: `curve: ${String(err)}`, diagnostics: null, field: 'curve' });
      this.paint();
      return;
    }
    if (typeof doc !== 'object' || doc === null || !doc.preimage) {
      this.setStatus({ kind: 'error', message: 'curve: not a curve document', diagnostics: null, field: 'curve' });
      this.paint();
      return;
    }
    this.state.fixture = 'imported';
    this.state.currentCurve = doc;
    this.resetSolutions();
    this.resetParamLengths();
    this.buildParamInputs();
    this.paint();
    this.queueRefresh();
  }

  // Resolves when no request, follow-up, or pending debounce remains.
  async idle(): Promise<void> {
    for (;;) {
      if (this.pending.size === 0 && this.deb.size === 0) return;
      await Promise.allSettled([...this.pending]);
      await new Promise((resolve) => setTimeout(resolve, 15));
      if (this.pending.size === 0 && this.deb.size === 0) return;
    }
  }

  // ---------- request cycle ----------

  queueRefresh(): void {
    this.deb.debounce('refresh', () => {
      const p = this.track(this.refreshNow());
      void p.catch(() => {});
    });
  }

  private async refreshNow(): Promise<void> {
    this.setStatus(OK_STATUS);
    if (this.state.scheme === ARC_LENGTH) {
      await this.solveArclen();
    } else {
      await this.solvePerturb();
    }
    this.paint();
    this.save();
  }

  private async solvePerturb(): Promise<void> {
    const scheme = this.state.scheme;
    const body = { curve: this.state.currentCurve, params: this.perturbParams() };
    const outcome = await this.api.postJson<PerturbResponse>('solve', `/api/perturb/${scheme}`, body);
    if (outcome.kind === 'stale') return;
    if (outcome.kind !== 'ok') {
      this.applyFailure(outcome);
      return;
    }
    this.state.solutions = outcome.value;
    this.afterSolve();
    await Promise.all([
      this.fetchArcBefore(),
      this.fetchArcAfter(),
      this.renderMain(),
      this.renderThumbs(),
    ]);
  }

  private async solveArclen(): Promise<void> {
    const store = this.paramStore();
    const fixed = parseFixed(String(store['fixed'] ?? ''));
    if (fixed === null) {
      this.setStatus({
        kind: 'error',
        message: 'fixed: expected entries like 4=0, 5=0',
        diagnostics: null,
        field: 'fixed',
      });
      return;
    }
    const body = {
      curve: this.state.currentCurve,
      delta_s: Number(store['delta_s'] ?? 0),
      fixed,
      starts: Number(store['starts'] ?? 256),
    };
    const outcome = await this.api.postJson<ArclenResponse>('solve', '/api/arclen', body);
    if (outcome.kind === 'stale') return;
    if (outcome.kind !== 'ok') {
      this.applyFailure(outcome);
      return;
    }
    this.state.solutions = outcome.value;
    this.afterSolve();
    await Promise.all([this.renderMain(), this.renderThumbs()]);
  }

  private async familyNow(): Promise<void> {
    const meta = schemeMeta(this.state.scheme);
    if (!meta || !meta.sweep) return;
    if (
      meta.sweep.needsDegree !== undefined &&
      this.state.currentCurve.preimage.degree !== meta.sweep.needsDegree
    ) {
      this.setStatus({
        kind: 'error',
        message: `family sweep for ${meta.id} needs a degree-${meta.sweep.needsDegree} pre-image`,
        diagnostics: null,
        field: null,
      });
      this.paint();
      return;
    }
    const body = {
      curve: this.state.currentCurve,
      scheme: meta.id,
      params: this.perturbParams(),
      grid: buildSweepGrid(meta.sweep, this.state.familySize),
      align: false,
    };
    const outcome = await this.api.postJson<FamilyResponse>('family', '/api/sample-family', body);
    if (outcome.kind === 'stale') return;
    if (outcome.kind !== 'ok') {
      this.applyFailure(outcome, false);
      this.paint();
      return;
    }
    this.state.family = outcome.value;
    this.state.overlays.family = true;
    await this.renderMain();
    this.paint();
    this.save();
  }

  private async fetchArcBefore(): Promise<void> {
    if (this.state.scheme === ARC_LENGTH) return; // response carries it
    const outcome = await this.api.postJson<InfoResponse>('info-base', '/api/info', {
      curve: this.state.currentCurve,
    });
    if (outcome.kind === 'ok') this.state.readouts.arcBefore = outcome.value.arc_length;
  }

  private async fetchArcAfter(): Promise<void> {
    const doc = this.selectedDocument();
    if (!doc || this.state.scheme === ARC_LENGTH) return;
    const outcome = await this.api.postJson<InfoResponse>('info-after', '/api/info', { curve: doc });
    if (outcome.kind === 'ok') this.state.readouts.arcAfter = outcome.value.arc_length;
  }

  private async renderMain(): Promise<void> {
    const curves: CurveDocument[] = [];
    if (this.state.overlays.original) curves.push(this.state.currentCurve);
    const doc = this.selectedDocument();
    if (this.state.overlays.perturbed && doc) curves.push(doc);
    if (this.state.overlays.family && this.state.family) curves.push(...this.state.family.curves);
    if (curves.length === 0) {
      this.state.svg = null;
      return;
    }
    const outcome = await this.api.postSvg('render', '/api/render', {
      curves,
      samples: this.samples,
      show_controls: this.state.overlays.controlPolygons,
      centroid_align: this.state.overlays.align,
    });
    if (outcome.kind === 'ok') this.state.svg = outcome.value;
  }

  private async renderThumbs(): Promise<void> {
    const docs = this.solutionDocuments();
    this.state.thumbs = new Array(docs.length).fill(null);
    await Promise.all(
      docs.map(async (doc, k) => {
        const outcome = await this.api.postSvg(`thumb-${k}`, '/api/render', {
          curves: [doc],
          samples: 48,
          show_controls: false,
          centroid_align: false,
        });
        if (outcome.kind === 'ok' && k < this.state.thumbs.length) {
          this.state.thumbs[k] = outcome.value;
        }
      }),
    );
  }

  // ---------- state plumbing ----------

  private afterSolve(): void {
    clampSelected(this.state);
    this.state.thumbs = new Array(solutionCount(this.state)).fill(null);
    this.applySelectionReadouts();
  }

  private applySelectionReadouts(): void {
    const r = this.state.readouts;
    const sols = this.state.solutions;
    if (!sols || sols.count === 0) {
      r.norm = r.distance = r.arcAfter = r.residual = null;
      return;
    }
    const k = this.state.selectedSolution;
    if (this.state.scheme === ARC_LENGTH) {
      const sol = (sols as ArclenResponse).solutions[k];
      r.norm = sol.norm;
      r.distance = null;
      r.residual = sol.residual;
      r.arcBefore = (sols as ArclenResponse).arc_length_before;
      r.arcAfter = sol.arc_length_after;
    } else {
      const sol = (sols as PerturbResponse).solutions[k];
      r.norm = sol.norm;
      r.distance = sol.curve.curve_distance;
      r.residual = null;
      r.arcAfter = null; // filled by the info request on the selected pre-image
    }
  }

  private applyFailure(
    outcome:
      | { kind: 'validation'; failure: { error: string; path: string } }
      | { kind: 'empty'; failure: SolverEmptyFailure }
      | { kind: 'network'; error: string },
    clear = true,
  ): void {
    if (clear) this.resetSolutions();
    if (outcome.kind === 'validation') {
      this.setStatus({
        kind: 'error',
        message: outcome.failure.error,
        diagnostics: null,
        field: fieldFromPath(outcome.failure.path),
      });
    } else if (outcome.kind === 'empty') {
      this.setStatus({
        kind: 'empty',
        message: 'no admissible modification',
        diagnostics: JSON.stringify(outcome.failure.diagnostics, null, 2),
        field: null,
      });
    } else {
      this.setStatus({ kind: 'network', message: outcome.error, diagnostics: null, field: null });
    }
  }

  private resetSolutions(): void {
    this.state.solutions = null;
    this.state.family = null;
    this.state.selectedSolution = 0;
    this.state.thumbs = [];
    this.state.svg = null;
    this.state.readouts = { norm: null, distance: null, arcBefore: null, arcAfter: null, residual: null };
  }

  // Parameter lists must track the degree of the loaded pre-image.
  private resetParamLengths(): void {
    const degree = this.state.currentCurve.preimage.degree;
    for (const meta of PERTURB_SCHEMES) {
      const store = this.state.parameters[meta.id] ?? {};
      const fresh = defaultParams(meta, degree);
      for (const p of meta.params) {
        if (p.kind === 'list') {
          const have = store[p.id];
          const want = p.lengthFor(degree);
          if (!Array.isArray(have) || have.length !== want) store[p.id] = fresh[p.id];
        }
      }
      this.state.parameters[meta.id] = store;
    }
  }

  private paramStore() {
    let store = this.state.parameters[this.state.scheme];
    if (!store) {
      store = {};
      this.state.parameters[this.state.scheme] = store;
    }
    return store;
  }

  private perturbParams(): Record<string, number | number[]> {
    const meta = schemeMeta(this.state.scheme);
    const store = this.paramStore();
    const out: Record<string, number | number[]> = {};
    for (const p of meta?.params ?? []) {
      const v = store[p.id];
      if (p.kind === 'number') out[p.id] = Number(v);
      else out[p.id] = Array.isArray(v) ? v.map(Number) : [];
    }
    return out;
  }

  private numberMeta(id: string) {
    if (this.state.scheme === ARC_LENGTH) {
      const table = ARC_LENGTH_PARAMS as Record<string, { min?: number; max?: number }>;
      const m = table[id];
      return m && m.min !== undefined ? { min: m.min, max: m.max as number } : null;
    }
    const meta = schemeMeta(this.state.scheme);
    const p = meta?.params.find((q) => q.id === id);
    return p && p.kind === 'number' ? p : null;
  }

  private selectedDocument(): CurveDocument | null {
    const docs = this.solutionDocuments();
    const k = this.state.selectedSolution;
    return k < docs.length ? docs[k] : null;
  }

  private solutionDocuments(): CurveDocument[] {
    const sols = this.state.solutions;
    if (!sols) return [];
    if (this.state.scheme === ARC_LENGTH) {
      return (sols as ArclenResponse).solutions.map((s: ArclenSolution) => s.preimage);
    }
    return (sols as PerturbResponse).solutions.map((s: PerturbSolution) => s.preimage);
  }

  private setStatus(line: StatusLine): void {
    this.status = line;
  }

  private save(): void {
    saveSession(this.storage, this.state);
  }

  private track<T>(p: Promise<T>): Promise<T> {
    const done: Promise<T> = p.finally(() => {
      this.pending.delete(done);
    });
    this.pending.add(done);
    return done;
  }

  // ---------- DOM ----------

  private el<T extends HTMLElement>(id: string): T {
    const found = this.root.querySelector(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found as T;
  }

  private buildSkeleton(): void {
    this.root.innerHTML = `
      <div class="studio">
        <div class="panel controls">
          <label>curve
            <select id="fixture-select"></select>
          </label>
          <label>scheme
            <select id="scheme-select"></select>
          </label>
          <div id="params"></div>
          <label>budget Δ
            <input id="budget" type="number" min="0" step="0.01">
          </label>
          <div class="family-row">
            <button id="envelope-btn" type="button">overlay family</button>
            <button id="family-clear" type="button">clear family</button>
            <label>members <input id="family-size" type="number" min="4" max="360" step="4"></label>
          </div>
          <div class="overlay-row">
            <label><input id="ov-original" type="checkbox"> original</label>
            <label><input id="ov-perturbed" type="checkbox"> perturbed</label>
            <label><input id="ov-family" type="checkbox"> family</label>
            <label><input id="ov-control-polygons" type="checkbox"> control polygons</label>
            <label><input id="ov-align" type="checkbox"> centroid align</label>
          </div>
          <div class="session-row">
            <button id="export-btn" type="button">export curve</button>
            <button id="import-btn" type="button">import curve</button>
            <textarea id="doc-json" rows="4" data-param="curve"></textarea>
          </div>
        </div>
        <div class="panel readouts">
          <div class="meter-box">
            <span id="ro-norm"></span> / <span id="ro-budget"></span>
            <div class="meter"><div id="ro-meter" class="meter-bar"></div></div>
            <span id="ro-budget-state"></span>
          </div>
          <dl>
            <dt>curve distance</dt><dd id="ro-distance"></dd>
            <dt>arc length before</dt><dd id="ro-arc-before"></dd>
            <dt>arc length after</dt><dd id="ro-arc-after"></dd>
            <dt>residual</dt><dd id="ro-residual"></dd>
            <dt>solutions</dt><dd id="ro-count"></dd>
          </dl>
          <div id="status"></div>
          <ul id="solutions"></ul>
        </div>
        <div class="panel view" id="view"></div>
      </div>`;

    const fixtureSel = this.el<HTMLSelectElement>('fixture-select');
    fixtureSel.innerHTML = FIXTURE_NAMES.map((n) => `<option value="${n}">${n}</option>`).join('');
    fixtureSel.addEventListener('change', () => this.loadFixture(fixtureSel.value));

    const schemeSel = this.el<HTMLSelectElement>('scheme-select');
    schemeSel.innerHTML = PERTURB_SCHEMES.map(
      (s) => `<option value="${s.id}">${s.label}</option>`,
    ).join('') + `<option value="${ARC_LENGTH}">arc length growth</option>`;
    schemeSel.addEventListener('change', () => this.setScheme(schemeSel.value));

    const budget = this.el<HTMLInputElement>('budget');
    budget.addEventListener('input', () => this.setBudget(Number.parseFloat(budget.value)));

    const familySize = this.el<HTMLInputElement>('family-size');
    familySize.addEventListener('input', () => this.setFamilySize(Number.parseFloat(familySize.value)));
    this.el<HTMLButtonElement>('envelope-btn').addEventListener('click', () => this.runFamily());
    this.el<HTMLButtonElement>('family-clear').addEventListener('click', () => this.clearFamily());

    for (const [id, flag] of [
      ['ov-original', 'original'],
      ['ov-perturbed', 'perturbed'],
      ['ov-family', 'family'],
      ['ov-control-polygons', 'controlPolygons'],
      ['ov-align', 'align'],
    ] as const) {
      const box = this.el<HTMLInputElement>(id);
      box.addEventListener('change', () => this.setOverlay(flag, box.checked));
    }

    this.el<HTMLButtonElement>('export-btn').addEventListener('click', () => this.exportCurve());
    this.el<HTMLButtonElement>('import-btn').addEventListener('click', () =>
      this.importCurve(this.el<HTMLTextAreaElement>('doc-json').value),
    );

    this.el<HTMLElement>('params').addEventListener('input', (ev) => {
      const input = ev.target as HTMLInputElement;
      const id = input.dataset['param'];
      if (!id) return;
      if (input.type === 'number') {
        const v = Number.parseFloat(input.value);
        if (Number.isNaN(v)) return;
        this.setNumberParam(id, v);
      } else if (id === 'fixed') {
        this.setFixedText(input.value);
      } else {
        this.setListParam(id, input.value);
      }
    });
  }

  private buildParamInputs(): void {
    const host = this.el<HTMLElement>('params');
    if (this.state.scheme === ARC_LENGTH) {
      const store = this.paramStore();
      if (store['delta_s'] === undefined) store['delta_s'] = ARC_LENGTH_PARAMS.delta_s.initial;
      if (store['fixed'] === undefined) store['fixed'] = ARC_LENGTH_PARAMS.fixed.initial;
      if (store['starts'] === undefined) store['starts'] = ARC_LENGTH_PARAMS.starts.initial;
      host.innerHTML = `
        <label>arc length change δS
          <input type="number" data-param="delta_s" step="${ARC_LENGTH_PARAMS.delta_s.step}"
                 min="${ARC_LENGTH_PARAMS.delta_s.min}" max="${ARC_LENGTH_PARAMS.delta_s.max}"
                 value="${store['delta_s']}"></label>
        <label>fixed γ entries
          <input type="text" data-param="fixed" value="${store['fixed']}"></label>
        <label>starts
          <input type="number" data-param="starts" step="${ARC_LENGTH_PARAMS.starts.step}"
                 min="${ARC_LENGTH_PARAMS.starts.min}" max="${ARC_LENGTH_PARAMS.starts.max}"
                 value="${store['starts']}"></label>`;
      return;
    }
    const meta = schemeMeta(this.state.scheme);
    if (!meta) {
      host.innerHTML = '';
      return;
    }
    const degree = this.state.currentCurve.preimage.degree;
    const store = this.paramStore();
    const rows: string[] = [];
    for (const p of meta.params) {
      if (p.kind === 'number') {
        if (typeof store[p.id] !== 'number') store[p.id] = p.initial;
        rows.push(`
          <label>${p.label}
            <input type="number" data-param="${p.id}" min="${p.min}" max="${p.max}"
                   step="${p.step}" value="${store[p.id]}"></label>`);
      } else {
        if (!Array.isArray(store[p.id])) store[p.id] = new Array(p.lengthFor(degree)).fill(p.fill);
        const text = (store[p.id] as number[]).join(', ');
        rows.push(`
          <label>${p.label}
            <input type="text" data-param="${p.id}" value="${text}"></label>`);
      }
    }
    host.innerHTML = rows.join('');
  }

  private paint(): void {
    const st = this.state;
    const r = st.readouts;

    this.el('ro-norm').textContent = fmt(r.norm);
    this.el('ro-budget').textContent = fmt(st.budget);
    const over = r.norm !== null && r.norm > st.budget;
    const meter = this.el('ro-meter');
    const fraction = r.norm === null || st.budget <= 0 ? 0 : Math.min(r.norm / st.budget, 1);
    meter.style.width = `${(fraction * 100).toFixed(1)}%`;
    meter.classList.toggle('over', over);
    this.el('ro-budget-state').textContent =
      r.norm === null ? '' : over ? 'over budget' : 'within budget';

    this.el('ro-distance').textContent = fmt(r.distance);
    this.el('ro-arc-before').textContent = fmt(r.arcBefore);
    this.el('ro-arc-after').textContent = fmt(r.arcAfter);
    this.el('ro-residual').textContent = r.residual === null ? 'n/a' : r.residual.toExponential(3);
    this.el('ro-count').textContent = String(solutionCount(st));

    const fixtureSel = this.el<HTMLSelectElement>('fixture-select');
    if (st.fixture === 'imported' && !fixtureSel.querySelector('option[value="imported"]')) {
      fixtureSel.insertAdjacentHTML('beforeend', '<option value="imported">imported</option>');
    }
    fixtureSel.value = st.fixture;
    this.el<HTMLSelectElement>('scheme-select').value = st.scheme;
    this.el<HTMLInputElement>('budget').value = String(st.budget);
    this.el<HTMLInputElement>('family-size').value = String(st.familySize);
    this.el<HTMLInputElement>('ov-original').checked = st.overlays.original;
    this.el<HTMLInputElement>('ov-perturbed').checked = st.overlays.perturbed;
    this.el<HTMLInputElement>('ov-family').checked = st.overlays.family;
    this.el<HTMLInputElement>('ov-control-polygons').checked = st.overlays.controlPolygons;
    this.el<HTMLInputElement>('ov-align').checked = st.overlays.align;
    const envelopeBtn = this.el<HTMLButtonElement>('envelope-btn');
    envelopeBtn.disabled = !schemeMeta(st.scheme)?.sweep;

    this.paintStatus();
    this.paintSolutions();

    this.el('view').innerHTML = st.svg ?? '<p class="placeholder">no curves to draw</p>';
  }

  private paintStatus(): void {
    const host = this.el('status');
    for (const input of this.root.querySelectorAll('.field-error')) {
      input.classList.remove('field-error');
    }
    if (this.status.kind === 'idle') {
      host.innerHTML = '';
      return;
    }
    const parts: string[] = [];
    if (this.status.kind === 'empty') {
      parts.push(`<p class="empty-result">${escapeHtml(this.status.message)}</p>`);
      if (this.status.diagnostics) {
        parts.push(`<pre class="diagnostics">${escapeHtml(this.status.diagnostics)}</pre>`);
      }
    } else {
      parts.push(`<p class="error-text">${escapeHtml(this.status.message)}</p>`);
    }
    host.innerHTML = parts.join('');
    if (this.status.field) {
      const input = this.root.querySelector(`[data-param="${this.status.field}"]`);
      input?.classList.add('field-error');
    }
  }

  private paintSolutions(): void {
    const host = this.el<HTMLUListElement>('solutions');
    const sols = this.state.solutions;
    if (!sols || sols.count === 0) {
      host.innerHTML = '';
      return;
    }
    const items: string[] = [];
    for (let k = 0; k < sols.count; k++) {
      const selected = k === this.state.selectedSolution ? ' selected' : '';
      const thumb = this.state.thumbs[k] ?? '';
      let label: string;
      let overBudget: boolean;
      if (this.state.scheme === ARC_LENGTH) {
        const sol = (sols as ArclenResponse).solutions[k];
        label = `‖δw‖ ${fmt(sol.norm)} residual ${sol.residual.toExponential(2)}`;
        overBudget = sol.norm > this.state.budget;
      } else {
        const sol = (sols as PerturbResponse).solutions[k];
        label = `‖δw‖ ${fmt(sol.norm)} distance ${fmt(sol.curve.curve_distance)}`;
        overBudget = sol.norm > this.state.budget;
      }
      const badge = overBudget ? '<span class="badge over">over budget</span>' : '';
      items.push(`
        <li class="solution${selected}" data-index="${k}">
          <div class="thumb">${thumb}</div>
          <div class="label">${label} ${badge}</div>
        </li>`);
    }
    host.innerHTML = items.join('');
    for (const li of host.querySelectorAll('li.solution')) {
      li.addEventListener('click', () =>
        this.selectSolution(Number.parseInt((li as HTMLElement).dataset['index'] ?? '0', 10)),
      );
    }
  }
}

function parseFixed(text: string): Record<string, number> | null {
  const out: Record<string, number> = {};
  const trimmed = text.trim();
  if (!trimmed) return out;
  for (const part of trimmed.split(',')) {
    const m = part.trim().match(/^(-?\d+)\s*=\s*(-?\d*\.?\d+(?:[eE][+-]?\d+)?)$/);
    if (!m) return null;
    out[m[1]] = Number.parseFloat(m[2]);
  }
  return out;
}

function fieldFromPath(path: string): string | null {
  if (path.startsWith('params.')) return path.split('.')[1].split('[')[0];
  if (path.startsWith('curve')) return 'curve';
  const head = path.split('.')[0].split('[')[0];
  if (['delta_s', 'fixed', 'starts', 'scheme', 'grid'].includes(head)) {
    return head === 'grid' || head === 'scheme' ? null : head;
  }
  return null;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
