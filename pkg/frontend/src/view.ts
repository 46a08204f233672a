/** Pure HTML renderers for the findings panel and form scaffolding.
 *
 * All functions return strings and read only their arguments, so they are
 * unit-testable without a browser.  The panel renders exactly the
 * findings the service reported (plus, during a what-if preview, the
 * delta the service computed) and nothing else.
 */

import type { UiCatalog } from './catalogs.js';
import {
  findingIdentity,
  type ApiIssue,
  type DeltaFinding,
  type Report,
  type ReportDelta,
} from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;')
    .replaceAll("'", '&#39;');
}

function findingLine(
  severityLabel: string,
  message: string,
  extraClass = '',
  badge = '',
): string {
  const classes = extraClass ? `finding ${extraClass}` : 'finding';
  const badgeHtml = badge ? ` <span class="badge">${escapeHtml(badge)}</span>` : '';
  return (
    `<li class="${classes}">` +
    `<span class="severity">[${escapeHtml(severityLabel)}]</span> ` +
    `${escapeHtml(message)}${badgeHtml}</li>`
  );
}

/** The six-section findings panel; resolved findings struck through and
 * introduced findings highlighted while a what-if preview is pending. */
export function renderReportPanel(
  report: Report,
  catalog: UiCatalog,
  delta: ReportDelta | null = null,
): string {
  const resolved = new Set(
    (delta?.resolved ?? []).map((f) => findingIdentity(f.section, f)),
  );
  const introducedBySection = new Map<number, DeltaFinding[]>();
  for (const finding of delta?.introduced ?? []) {
    const list = introducedBySection.get(finding.section) ?? [];
    list.push(finding);
    introducedBySection.set(finding.section, list);
  }

  const parts: string[] = ['<div class="report-panel">'];
  parts.push(`<p class="disclaimer">${escapeHtml(catalog.disclaimer)}</p>`);
  for (const section of report.sections) {
    parts.push(`<section data-section="${section.section}">`);
    parts.push(`<h3>${section.section}. ${escapeHtml(section.title)}</h3>`);
    const introduced = introducedBySection.get(section.section) ?? [];
    if (section.findings.length === 0 && introduced.length === 0) {
      parts.push(`<p class="no-findings">${escapeHtml(catalog.noFindings)}</p>`);
    } else {
      parts.push('<ul>');
      for (const finding of section.findings) {
        const identity = findingIdentity(section.section, finding);
        const struck = resolved.has(identity);
        parts.push(
          findingLine(
            catalog.severityLabels[finding.severity] ?? finding.severity,
            finding.message,
            struck ? 'resolved' : '',
            struck ? catalog.resolvedBadge : '',
          ),
        );
      }
      for (const finding of introduced) {
        parts.push(
          findingLine(
            catalog.severityLabels[finding.severity] ?? finding.severity,
            finding.message,
            'introduced',
            catalog.introducedBadge,
          ),
        );
      }
      parts.push('</ul>');
    }
    parts.push('</section>');
  }
  parts.push('</div>');
  return parts.join('\n');
}

export function renderIssues(issues: ApiIssue[]): string {
  if (issues.length === 0) return '';
  const items = issues
    .map(
      (issue) =>
        `<li><code>${escapeHtml(issue.path)}</code>: ${escapeHtml(issue.message)} ` +
        `<span class="issue-code">[${escapeHtml(issue.code)}]</span></li>`,
    )
    .join('\n');
  return `<ul class="issues">\n${items}\n</ul>`;
}

export function renderActorSelect(
  name: string,
  options: string[],
  selected: string[],
  nobodyLabel: string,
): string {
  const rows = options
    .map((option, index) => {
      const label = index === 0 ? nobodyLabel : option;
      const checked =
        index === 0
          ? selected.length === 0
          : selected.includes(option);
      const type = index === 0 ? 'nobody' : 'actor';
      return (
        `<label class="option"><input type="checkbox" data-kind="${type}" ` +
        `name="${escapeHtml(name)}" value="${escapeHtml(option)}"` +
        `${checked ? ' checked' : ''}> ${escapeHtml(label)}</label>`
      );
    })
    .join('\n');
  return `<fieldset data-slot="${escapeHtml(name)}">\n${rows}\n</fieldset>`;
}
