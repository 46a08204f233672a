/** Thin typed client for the respmap session API. */

import type {
  ApiIssue,
  MapDeltaBody,
  MapDocument,
  Report,
  ReportDelta,
  SessionInfo,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly issues: ApiIssue[] = [],
    readonly currentRevision?: number,
  ) {
    super(message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let code = 'http-error';
  let message = `${response.status} ${response.statusText}`;
  let issues: ApiIssue[] = [];
  let currentRevision: number | undefined;
  try {
    const body = (await response.json()) as {
      error?: { code?: string; message?: string; issues?: ApiIssue[]; current_revision?: number };
    };
    if (body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      issues = body.error.issues ?? [];
      currentRevision = body.error.current_revision;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, code, message, issues, currentRevision);
}

export class RespmapApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string, locale?: string): string {
    const suffix = locale ? `?locale=${encodeURIComponent(locale)}` : '';
    return `${this.baseUrl}/api/v1${path}${suffix}`;
  }

  async health(): Promise<{ status: string; engine_version: string }> {
    const response = await this.fetchImpl(this.url('/health'));
    await raiseForStatus(response);
    return response.json();
  }

  async createSession(initial?: Partial<MapDocument>): Promise<SessionInfo> {
    const response = await this.fetchImpl(this.url('/sessions'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: initial ? JSON.stringify(initial) : '',
    });
    await raiseForStatus(response);
    return response.json();
  }

  async getSession(sessionId: string): Promise<SessionInfo & { map: MapDocument }> {
    const response = await this.fetchImpl(this.url(`/sessions/${sessionId}`));
    await raiseForStatus(response);
    return response.json();
  }

  async putBlock(
    sessionId: string,
    block: number,
    revision: number,
    payload: Record<string, unknown>,
    locale: string,
  ): Promise<SessionInfo & { block: number; report: Report }> {
    const response = await this.fetchImpl(
      this.url(`/sessions/${sessionId}/blocks/${block}`, locale),
      {
        method: 'PUT',
        headers: { 'Content-Type': 'application/json', 'If-Match': String(revision) },
        body: JSON.stringify(payload),
      },
    );
    await raiseForStatus(response);
    return response.json();
  }

  async getReport(sessionId: string, locale: string): Promise<Report> {
    const response = await this.fetchImpl(this.url(`/sessions/${sessionId}/report`, locale));
    await raiseForStatus(response);
    return response.json();
  }

  async whatIf(sessionId: string, delta: MapDeltaBody, locale: string): Promise<ReportDelta> {
    const response = await this.fetchImpl(this.url(`/sessions/${sessionId}/whatif`, locale), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(delta),
    });
    await raiseForStatus(response);
    return response.json();
  }

  /** Canonical map document, byte-exact as served. */
  async exportBytes(sessionId: string): Promise<Uint8Array> {
    const response = await this.fetchImpl(this.url(`/sessions/${sessionId}/export`));
    await raiseForStatus(response);
    return new Uint8Array(await response.arrayBuffer());
  }
}
