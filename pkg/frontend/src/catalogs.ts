/** Static UI strings per locale.
 *
 * The disclaimer and the empty-section sentence mirror the engine's
 * message catalogs verbatim; section titles and finding messages always
 * come from the server report, never from here.
 */

export interface UiCatalog {
  disclaimer: string;
  noFindings: string;
  stepTitles: Record<number, string>;
  severityLabels: Record<string, string>;
  resolvedBadge: string;
  introducedBadge: string;
  exportLabel: string;
  applyLabel: string;
  cancelLabel: string;
  retryLabel: string;
  networkError: string;
  nobodyLabel: string;
}

export const UI_CATALOGS: Record<string, UiCatalog> = {
  de: {
    disclaimer:
      'Diese Problemliste ist als Anregung zu verstehen, genauer darüber ' +
      'nachzudenken, ob diese Probleme im konkreten Fall wirklich bestehen ' +
      'und welche Auswirkungen sie haben können, und erhebt insbesondere ' +
      'keinen Anspruch auf Vollständigkeit.',
    noFindings: 'Wir konnten keine offensichtlichen Probleme dieser Art identifizieren.',
    stepTitles: {
      1: 'Block 1: Beteiligte Personen und Gruppen',
      2: 'Block 2: Aufgaben',
      3: 'Block 3: Verantwortungsbereiche',
      4: 'Block 4: Befugnisse',
      5: 'Block 5: Kommunikationswege',
    },
    severityLabels: { gap: 'Lücke', conflict: 'Konflikt', advisory: 'Hinweis' },
    resolvedBadge: 'würde behoben',
    introducedBadge: 'käme neu hinzu',
    exportLabel: 'Karte exportieren',
    applyLabel: 'Übernehmen',
    cancelLabel: 'Verwerfen',
    retryLabel: 'Erneut versuchen',
    networkError: 'Verbindung fehlgeschlagen – Eingaben bleiben erhalten.',
    nobodyLabel: 'niemand',
  },
  en: {
    disclaimer:
      'This list of problems is meant as a prompt to think more carefully ' +
      'about whether these problems really exist in your specific case and ' +
      'what consequences they might have; in particular, it makes no claim ' +
      'to completeness.',
    noFindings: 'We could not identify any obvious problems of this kind.',
    stepTitles: {
      1: 'Block 1: People and groups involved',
      2: 'Block 2: Tasks',
      3: 'Block 3: Responsibility areas',
      4: 'Block 4: Authorities',
      5: 'Block 5: Communication channels',
    },
    severityLabels: { gap: 'gap', conflict: 'conflict', advisory: 'advisory' },
    resolvedBadge: 'would be resolved',
    introducedBadge: 'would be introduced',
    exportLabel: 'Export map',
    applyLabel: 'Apply',
    cancelLabel: 'Discard',
    retryLabel: 'Retry',
    networkError: 'Connection failed – your input is preserved.',
    nobodyLabel: 'nobody',
  },
};
