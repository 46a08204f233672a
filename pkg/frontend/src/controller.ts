/** Wizard flow: ties the API client to the state transitions.
 *
 * The controller owns one session and its revision token.  Form input
 * stays local until a step is submitted; a rejected submission changes
 * nothing except the inline issue list, and a network failure flips a
 * retriable flag while preserving all input.
 */

import { ApiError, RespmapApi } from './api.js';
import {
  applyWhatIfToValues,
  blockPayload,
  clientCheck,
  emptyValues,
  stepForFamily,
  valuesFromDocument,
  type FormValues,
  type PendingWhatIf,
  type Step,
  type WizardState,
} from './state.js';
import type { MapDocument, SlotFamily, SlotValue } from './types.js';

export interface SubmitOutcome {
  ok: boolean;
  retriable?: boolean;
}

export class WizardController {
  state: WizardState;

  constructor(
    private readonly api: RespmapApi,
    locale = 'de',
  ) {
    this.state = {
      sessionId: '',
      revision: 0,
      step: 1,
      locale,
      values: emptyValues(),
      report: null,
      pendingWhatIf: null,
      issues: [],
      networkError: null,
    };
  }

  async start(initial?: Partial<MapDocument>): Promise<void> {
    const info = await this.api.createSession(initial);
    this.state.sessionId = info.session_id;
    this.state.revision = info.revision;
    if (initial) {
      const session = await this.api.getSession(info.session_id);
      this.state.values = valuesFromDocument(session.map);
    }
    await this.refreshReport();
  }

  async load(sessionId: string): Promise<void> {
    const session = await this.api.getSession(sessionId);
    this.state.sessionId = session.session_id;
    this.state.revision = session.revision;
    this.state.values = valuesFromDocument(session.map);
    await this.refreshReport();
  }

  async refreshReport(): Promise<void> {
    this.state.report = await this.api.getReport(this.state.sessionId, this.state.locale);
  }

  /** Switching the locale re-renders the messages; the findings keep
   * their identities because analysis never depends on wording. */
  async setLocale(locale: string): Promise<void> {
    this.state.locale = locale;
    await this.refreshReport();
  }

  /** Submit one block.  Client-side shape problems and server-side 400s
   * land in `state.issues` without touching the submitted values. */
  async submitStep(step: Step, values: FormValues): Promise<SubmitOutcome> {
    this.state.networkError = null;
    const localIssues = clientCheck(step, values);
    if (localIssues.length > 0) {
      this.state.issues = localIssues;
      return { ok: false };
    }
    try {
      const result = await this.api.putBlock(
        this.state.sessionId,
        step,
        this.state.revision,
        blockPayload(step, values),
        this.state.locale,
      );
      this.state.values = values;
      this.state.revision = result.revision;
      this.state.report = result.report;
      this.state.issues = [];
      this.state.pendingWhatIf = null;
      if (step < 5) this.state.step = (step + 1) as Step;
      return { ok: true };
    } catch (error) {
      if (error instanceof ApiError) {
        if (error.status === 409 && error.currentRevision !== undefined) {
          this.state.revision = error.currentRevision;
        }
        this.state.issues = error.issues.length
          ? error.issues
          : [{ code: error.code, path: '', message: error.message }];
        return { ok: false };
      }
      this.state.networkError = String(error);
      return { ok: false, retriable: true };
    }
  }

  /** Preview a single-slot reassignment; the session is not mutated. */
  async toggleWhatIf(family: SlotFamily, slot: string, value: SlotValue): Promise<void> {
    const delta = await this.api.whatIf(
      this.state.sessionId,
      { [family]: { [slot]: value } },
      this.state.locale,
    );
    this.state.pendingWhatIf = { family, slot, value, delta };
  }

  cancelWhatIf(): void {
    this.state.pendingWhatIf = null;
  }

  /** Turn the pending preview into a real block submission. */
  async applyWhatIf(): Promise<SubmitOutcome> {
    const pending = this.state.pendingWhatIf;
    if (!pending) return { ok: true };
    const values = applyWhatIfToValues(this.state.values, pending);
    return this.submitStep(stepForFamily(pending.family), values);
  }

  async exportBytes(): Promise<Uint8Array> {
    return this.api.exportBytes(this.state.sessionId);
  }

  pendingWhatIf(): PendingWhatIf | null {
    return this.state.pendingWhatIf;
  }
}
