/** Wizard state and the pure logic around it.
 *
 * Everything here is side-effect free so the step flow can be tested
 * without a DOM: form values per block, the actor options offered to
 * blocks 2-5, client-side shape checks, and the payload for each block
 * update.  Findings are never produced here; the panel only ever shows
 * what the service reported.
 */

import {
  AUTHORITY_TOKENS,
  type ActorEntry,
  type ApiIssue,
  type MapDocument,
  NOBODY,
  RESPONSIBILITY_TOKENS,
  type Report,
  type ReportDelta,
  type SlotFamily,
  type SlotValue,
  TASK_TOKENS,
} from './types.js';

export type Step = 1 | 2 | 3 | 4 | 5;

export const STEPS: readonly Step[] = [1, 2, 3, 4, 5];

export interface FormValues {
  actors: ActorEntry[];
  tasks: Record<string, SlotValue>;
  responsibilities: Record<string, SlotValue>;
  authorities: Record<string, SlotValue>;
  channels: [string, string][];
}

export interface PendingWhatIf {
  family: SlotFamily;
  slot: string;
  value: SlotValue;
  delta: ReportDelta;
}

export interface WizardState {
  sessionId: string;
  revision: number;
  step: Step;
  locale: string;
  values: FormValues;
  report: Report | null;
  pendingWhatIf: PendingWhatIf | null;
  issues: ApiIssue[];
  networkError: string | null;
}

export function emptyValues(): FormValues {
  const fill = (tokens: readonly string[]): Record<string, SlotValue> =>
    Object.fromEntries(tokens.map((token) => [token, NOBODY]));
  return {
    actors: [],
    tasks: fill(TASK_TOKENS),
    responsibilities: fill(RESPONSIBILITY_TOKENS),
    authorities: fill(AUTHORITY_TOKENS),
    channels: [],
  };
}

export function valuesFromDocument(doc: MapDocument): FormValues {
  return {
    actors: doc.actors.map((a) => ({ ...a })),
    tasks: { ...doc.tasks },
    responsibilities: { ...doc.responsibilities },
    authorities: { ...doc.authorities },
    channels: doc.channels.map(([a, b]) => [a, b]),
  };
}

/** Blocks 2-5 may only reference actors registered in block 1; the
 * sentinel is always offered as the leading option. */
export function actorOptions(values: FormValues): string[] {
  return [NOBODY, ...values.actors.map((a) => a.name)];
}

const BLOCK_KEYS: Record<Step, keyof FormValues> = {
  1: 'actors',
  2: 'tasks',
  3: 'responsibilities',
  4: 'authorities',
  5: 'channels',
};

export function blockKey(step: Step): keyof FormValues {
  return BLOCK_KEYS[step];
}

/** The PUT body for one block, straight from the form values. */
export function blockPayload(step: Step, values: FormValues): Record<string, unknown> {
  const key = BLOCK_KEYS[step];
  if (key === 'actors') {
    return {
      actors: values.actors.map((a) =>
        a.kind ? { name: a.name, kind: a.kind } : { name: a.name },
      ),
    };
  }
  if (key === 'channels') {
    return { channels: values.channels };
  }
  return { [key]: values[key] };
}

/** Cheap local checks so obviously broken input never reaches the
 * server; mirrors the server's issue codes for a consistent display. */
export function clientCheck(step: Step, values: FormValues): ApiIssue[] {
  const issues: ApiIssue[] = [];
  const registered = new Set(values.actors.map((a) => a.name));
  if (step === 1) {
    const seen = new Set<string>();
    values.actors.forEach((actor, index) => {
      const name = actor.name.trim();
      const path = `actors[${index}]`;
      if (!name) {
        issues.push({ code: 'EmptyActorName', path, message: 'actor name is empty' });
      } else if (name === NOBODY) {
        issues.push({
          code: 'ReservedActorName',
          path,
          message: `"${NOBODY}" is reserved and cannot be used as an actor name`,
        });
      } else if (seen.has(name)) {
        issues.push({ code: 'DuplicateActor', path, message: `duplicate actor "${name}"` });
      }
      seen.add(name);
    });
    return issues;
  }
  if (step === 5) {
    values.channels.forEach(([a, b], index) => {
      const path = `channels[${index}]`;
      if (a === b) {
        issues.push({ code: 'ChannelSelfPair', path, message: 'a channel needs two distinct actors' });
      }
      for (const name of [a, b]) {
        if (!registered.has(name)) {
          issues.push({
            code: 'ChannelUnknownActor',
            path,
            message: `"${name}" is not a registered actor`,
          });
        }
      }
    });
    return issues;
  }
  const key = BLOCK_KEYS[step] as SlotFamily;
  for (const [token, value] of Object.entries(values[key])) {
    if (value === NOBODY) continue;
    const path = `${key}.${token}`;
    if (value.length === 0) {
      issues.push({ code: 'SyntaxError', path, message: 'pick at least one actor or "nobody"' });
    }
    for (const name of value) {
      if (!registered.has(name)) {
        issues.push({
          code: 'UnknownActorReference',
          path,
          message: `"${name}" is not a registered actor`,
        });
      }
    }
  }
  return issues;
}

/** Fold an accepted what-if delta into the form values (the "apply" half
 * of the toggle); the caller then submits the touched block for real. */
export function applyWhatIfToValues(values: FormValues, pending: PendingWhatIf): FormValues {
  const family = { ...values[pending.family], [pending.slot]: pending.value };
  return { ...values, [pending.family]: family };
}

export function stepForFamily(family: SlotFamily): Step {
  return family === 'tasks' ? 2 : family === 'responsibilities' ? 3 : 4;
}
