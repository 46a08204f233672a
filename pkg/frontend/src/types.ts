/** Wire types shared with the respmap HTTP API. */

export const TASK_TOKENS = [
  'adoption_decision',
  'development',
  'implementation',
  'application',
  'security',
  'data_management',
  'evaluation',
] as const;

export const RESPONSIBILITY_TOKENS = [
  'targets_not_met',
  'poor_integration',
  'data_protection_complaints',
  'security_breach',
  'misapplication',
] as const;

export const AUTHORITY_TOKENS = [
  'stop_system',
  'change_integration_and_use',
  'correct_data',
  'mandate_security',
] as const;

export type TaskToken = (typeof TASK_TOKENS)[number];
export type ResponsibilityToken = (typeof RESPONSIBILITY_TOKENS)[number];
export type AuthorityToken = (typeof AUTHORITY_TOKENS)[number];

export const NOBODY = 'nobody';

/** A slot is answered with the sentinel or a non-empty list of actor names. */
export type SlotValue = typeof NOBODY | string[];

export type SlotFamily = 'tasks' | 'responsibilities' | 'authorities';

export interface ActorEntry {
  name: string;
  kind?: string;
}

export interface MapDocument {
  format_version: number;
  title: string;
  notes?: string;
  actors: ActorEntry[];
  tasks: Record<TaskToken, SlotValue>;
  responsibilities: Record<ResponsibilityToken, SlotValue>;
  authorities: Record<AuthorityToken, SlotValue>;
  channels: [string, string][];
}

export interface Finding {
  rule: string;
  severity: 'gap' | 'conflict' | 'advisory';
  slot: string;
  subjects: string[];
  message: string;
}

export interface ReportSection {
  section: number;
  title: string;
  findings: Finding[];
}

export interface Report {
  engine_version: string;
  locale: string;
  map_digest: string;
  sections: ReportSection[];
}

export interface DeltaFinding extends Finding {
  section: number;
}

export interface ReportDelta {
  engine_version: string;
  locale: string;
  resolved: DeltaFinding[];
  introduced: DeltaFinding[];
}

export interface SessionInfo {
  session_id: string;
  created_at: string;
  updated_at: string;
  revision: number;
  blocks_submitted: number[];
  draft: boolean;
}

export interface ApiIssue {
  code: string;
  path: string;
  message: string;
}

/** The identity tuple the engine diffs by; wording never enters it. */
export function findingIdentity(section: number, finding: Finding): string {
  return [section, finding.rule, finding.slot, ...finding.subjects].join('␟');
}

export interface MapDeltaBody {
  tasks?: Partial<Record<TaskToken, SlotValue>>;
  responsibilities?: Partial<Record<ResponsibilityToken, SlotValue>>;
  authorities?: Partial<Record<AuthorityToken, SlotValue>>;
  channels_add?: [string, string][];
  channels_remove?: [string, string][];
}
