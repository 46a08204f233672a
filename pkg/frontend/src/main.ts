/** Browser wiring: renders the five-block wizard and the live findings
 * panel, and forwards events to the controller.  All logic lives in the
 * controller/state/view modules; this file only touches the DOM. */

import { RespmapApi } from './api.js';
import { UI_CATALOGS, type UiCatalog } from './catalogs.js';
import { WizardController } from './controller.js';
import { actorOptions, STEPS, type FormValues, type Step } from './state.js';
import {
  AUTHORITY_TOKENS,
  NOBODY,
  RESPONSIBILITY_TOKENS,
  TASK_TOKENS,
  type SlotFamily,
  type SlotValue,
} from './types.js';
import { escapeHtml, renderActorSelect, renderIssues, renderReportPanel } from './view.js';

const FAMILY_TOKENS: Record<SlotFamily, readonly string[]> = {
  tasks: TASK_TOKENS,
  responsibilities: RESPONSIBILITY_TOKENS,
  authorities: AUTHORITY_TOKENS,
};

const STEP_FAMILY: Partial<Record<Step, SlotFamily>> = {
  2: 'tasks',
  3: 'responsibilities',
  4: 'authorities',
};

function catalog(locale: string): UiCatalog {
  return UI_CATALOGS[locale] ?? UI_CATALOGS['de']!;
}

function cloneValues(values: FormValues): FormValues {
  return JSON.parse(JSON.stringify(values)) as FormValues;
}

class WizardView {
  private readonly controller: WizardController;
  private draft: FormValues;

  constructor(
    private readonly root: HTMLElement,
    baseUrl: string,
  ) {
    this.controller = new WizardController(new RespmapApi(baseUrl));
    this.draft = cloneValues(this.controller.state.values);
  }

  async start(): Promise<void> {
    await this.controller.start();
    this.draft = cloneValues(this.controller.state.values);
    this.render();
  }

  private get cat(): UiCatalog {
    return catalog(this.controller.state.locale);
  }

  private render(): void {
    const state = this.controller.state;
    const stepNav = STEPS.map(
      (step) =>
        `<button class="step-tab${step === state.step ? ' active' : ''}" data-step="${step}">` +
        `${step}</button>`,
    ).join('');
    this.root.innerHTML = `
      <header>
        <h1>respmap</h1>
        <nav>${stepNav}</nav>
        <span class="spacer"></span>
        <select id="locale">
          <option value="de"${state.locale === 'de' ? ' selected' : ''}>Deutsch</option>
          <option value="en"${state.locale === 'en' ? ' selected' : ''}>English</option>
        </select>
        <button id="export">${escapeHtml(this.cat.exportLabel)}</button>
      </header>
      ${state.networkError ? this.renderNetworkBanner() : ''}
      <main>
        <section class="form-pane">
          <h2>${escapeHtml(this.cat.stepTitles[state.step] ?? String(state.step))}</h2>
          <div id="issues">${renderIssues(state.issues)}</div>
          <form id="block-form">${this.renderStepForm()}</form>
          ${this.renderWhatIfBar()}
        </section>
        <aside class="findings-pane" id="findings">
          ${
            state.report
              ? renderReportPanel(state.report, this.cat, state.pendingWhatIf?.delta ?? null)
              : ''
          }
        </aside>
      </main>`;
    this.wire();
  }

  private renderNetworkBanner(): string {
    return (
      `<div class="banner">${escapeHtml(this.cat.networkError)} ` +
      `<button id="retry">${escapeHtml(this.cat.retryLabel)}</button></div>`
    );
  }

  private renderStepForm(): string {
    const step = this.controller.state.step;
    if (step === 1) {
      const rows = this.draft.actors
        .map(
          (actor, index) => `
            <div class="actor-row" data-index="${index}">
              <input type="text" class="actor-name" value="${escapeHtml(actor.name)}"
                     placeholder="Name">
              <input type="text" class="actor-kind" value="${escapeHtml(actor.kind ?? '')}"
                     placeholder="kind">
              <button type="button" class="remove-actor">×</button>
            </div>`,
        )
        .join('');
      return `${rows}
        <button type="button" id="add-actor">+</button>
        <button type="submit" id="submit-step">OK</button>`;
    }
    if (step === 5) {
      const names = this.draft.actors.map((a) => a.name);
      const selects = (selected: string) =>
        names
          .map(
            (name) =>
              `<option value="${escapeHtml(name)}"${name === selected ? ' selected' : ''}>` +
              `${escapeHtml(name)}</option>`,
          )
          .join('');
      const rows = this.draft.channels
        .map(
          ([a, b], index) => `
            <div class="channel-row" data-index="${index}">
              <select class="channel-a">${selects(a)}</select> ↔
              <select class="channel-b">${selects(b)}</select>
              <button type="button" class="remove-channel">×</button>
            </div>`,
        )
        .join('');
      return `${rows}
        <button type="button" id="add-channel" ${names.length < 2 ? 'disabled' : ''}>+</button>
        <button type="submit" id="submit-step">OK</button>`;
    }
    const family = STEP_FAMILY[step]!;
    const options = actorOptions(this.draft);
    const slots = FAMILY_TOKENS[family]
      .map((token) => {
        const value = this.draft[family][token] ?? NOBODY;
        const selected = value === NOBODY ? [] : value;
        return `
          <div class="slot" data-family="${family}" data-token="${token}">
            <h4>${escapeHtml(token)}</h4>
            ${renderActorSelect(token, options, selected, this.cat.nobodyLabel)}
            <button type="button" class="whatif" data-token="${token}">?</button>
          </div>`;
      })
      .join('');
    return `${slots}<button type="submit" id="submit-step">OK</button>`;
  }

  private renderWhatIfBar(): string {
    const pending = this.controller.state.pendingWhatIf;
    if (!pending) return '';
    return `
      <div class="whatif-bar">
        <code>${escapeHtml(pending.slot)}</code>
        <button id="apply-whatif">${escapeHtml(this.cat.applyLabel)}</button>
        <button id="cancel-whatif">${escapeHtml(this.cat.cancelLabel)}</button>
      </div>`;
  }

  private readDraftFromForm(): void {
    const step = this.controller.state.step;
    const form = this.root.querySelector<HTMLFormElement>('#block-form');
    if (!form) return;
    if (step === 1) {
      this.draft.actors = [...form.querySelectorAll<HTMLElement>('.actor-row')].map((row) => {
        const name = row.querySelector<HTMLInputElement>('.actor-name')?.value ?? '';
        const kind = row.querySelector<HTMLInputElement>('.actor-kind')?.value.trim();
        return kind ? { name, kind } : { name };
      });
      return;
    }
    if (step === 5) {
      this.draft.channels = [...form.querySelectorAll<HTMLElement>('.channel-row')].map(
        (row) =>
          [
            row.querySelector<HTMLSelectElement>('.channel-a')?.value ?? '',
            row.querySelector<HTMLSelectElement>('.channel-b')?.value ?? '',
          ] as [string, string],
      );
      return;
    }
    const family = STEP_FAMILY[step]!;
    for (const slot of form.querySelectorAll<HTMLElement>('.slot')) {
      const token = slot.dataset['token']!;
      const actorBoxes = [
        ...slot.querySelectorAll<HTMLInputElement>('input[data-kind="actor"]:checked'),
      ];
      this.draft[family][token] = actorBoxes.length
        ? actorBoxes.map((box) => box.value)
        : NOBODY;
    }
  }

  private slotValue(family: SlotFamily, token: string): SlotValue {
    return this.draft[family][token] ?? NOBODY;
  }

  private wire(): void {
    const state = this.controller.state;
    this.root.querySelectorAll<HTMLButtonElement>('.step-tab').forEach((tab) =>
      tab.addEventListener('click', () => {
        this.readDraftFromForm();
        state.step = Number(tab.dataset['step']) as Step;
        this.render();
      }),
    );
    this.root.querySelector<HTMLSelectElement>('#locale')?.addEventListener('change', (e) => {
      void this.controller
        .setLocale((e.target as HTMLSelectElement).value)
        .then(() => this.render());
    });
    this.root.querySelector<HTMLButtonElement>('#export')?.addEventListener('click', () => {
      void this.controller.exportBytes().then((bytes) => {
        const blob = new Blob([bytes as BlobPart], { type: 'application/json' });
        const link = document.createElement('a');
        link.href = URL.createObjectURL(blob);
        link.download = `${this.controller.state.sessionId}.respmap.json`;
        link.click();
        URL.revokeObjectURL(link.href);
      });
    });
    this.root.querySelector<HTMLButtonElement>('#retry')?.addEventListener('click', () => {
      void this.submitCurrent();
    });
    this.root.querySelector<HTMLFormElement>('#block-form')?.addEventListener('submit', (e) => {
      e.preventDefault();
      void this.submitCurrent();
    });
    this.root.querySelector<HTMLButtonElement>('#add-actor')?.addEventListener('click', () => {
      this.readDraftFromForm();
      this.draft.actors.push({ name: '' });
      this.render();
    });
    this.root.querySelectorAll<HTMLButtonElement>('.remove-actor').forEach((button) =>
      button.addEventListener('click', () => {
        this.readDraftFromForm();
        const index = Number(button.closest('.actor-row')?.getAttribute('data-index'));
        this.draft.actors.splice(index, 1);
        this.render();
      }),
    );
    this.root.querySelector<HTMLButtonElement>('#add-channel')?.addEventListener('click', () => {
      this.readDraftFromForm();
      const names = this.draft.actors.map((a) => a.name);
      if (names.length >= 2) this.draft.channels.push([names[0]!, names[1]!]);
      this.render();
    });
    this.root.querySelectorAll<HTMLButtonElement>('.remove-channel').forEach((button) =>
      button.addEventListener('click', () => {
        this.readDraftFromForm();
        const index = Number(button.closest('.channel-row')?.getAttribute('data-index'));
        this.draft.channels.splice(index, 1);
        this.render();
      }),
    );
    // checking "nobody" clears the actor boxes and vice versa
    this.root.querySelectorAll<HTMLInputElement>('input[type="checkbox"]').forEach((box) =>
      box.addEventListener('change', () => {
        const fieldset = box.closest('fieldset');
        if (!fieldset || !box.checked) return;
        const selector =
          box.dataset['kind'] === 'nobody'
            ? 'input[data-kind="actor"]'
            : 'input[data-kind="nobody"]';
        fieldset
          .querySelectorAll<HTMLInputElement>(selector)
          .forEach((other) => (other.checked = false));
      }),
    );
    this.root.querySelectorAll<HTMLButtonElement>('.whatif').forEach((button) =>
      button.addEventListener('click', () => {
        this.readDraftFromForm();
        const family = STEP_FAMILY[state.step]!;
        const token = button.dataset['token']!;
        void this.controller
          .toggleWhatIf(family, token, this.slotValue(family, token))
          .then(() => this.render());
      }),
    );
    this.root.querySelector<HTMLButtonElement>('#apply-whatif')?.addEventListener('click', () => {
      void this.controller.applyWhatIf().then(() => {
        this.draft = cloneValues(this.controller.state.values);
        this.render();
      });
    });
    this.root.querySelector<HTMLButtonElement>('#cancel-whatif')?.addEventListener('click', () => {
      this.controller.cancelWhatIf();
      this.render();
    });
  }

  private async submitCurrent(): Promise<void> {
    this.readDraftFromForm();
    const outcome = await this.controller.submitStep(
      this.controller.state.step,
      cloneValues(this.draft),
    );
    if (outcome.ok) this.draft = cloneValues(this.controller.state.values);
    this.render();
  }
}

const root = document.getElementById('app');
if (root) {
  const baseUrl =
    new URLSearchParams(location.search).get('api') ?? 'http://127.0.0.1:8642';
  void new WizardView(root, baseUrl).start();
}
