import type { AnalysisReport } from './report.js';

export interface AnalyzeRequest {
  program: string;
  types: string;
  contextual: string[];
  engine: string;
  goal: string | null;
}

/** Chain a stored result by id, or re-submit the original fields inline. */
export type ChainRequest = { resultId: string } | AnalyzeRequest;

export interface ExampleEntry {
  name: string;
  description: string;
  program: string;
  types: string;
  goal: string | null;
  contextual: string[];
}

export interface AnalysisResult {
  report: AnalysisReport;
  resultId: string | null;
}

export interface Api {
  analyze(request: AnalyzeRequest): Promise<AnalysisResult>;
  chain(request: ChainRequest): Promise<AnalysisResult>;
  examples(): Promise<ExampleEntry[]>;
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly kind: string | null = null,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function reject(response: Response): Promise<never> {
  let message = `request failed with status ${response.status}`;
  let kind: string | null = null;
  try {
    const body = await response.json();
    if (typeof body.error === 'string') {
      message = body.error;
    }
    if (typeof body.kind === 'string') {
      kind = body.kind;
    }
  } catch {
    // non-JSON error body, keep the generic message
  }
  throw new ApiError(message, response.status, kind);
}

export function httpApi(base = ''): Api {
  async function post(path: string, body: unknown): Promise<AnalysisResult> {
    const response = await fetch(`${base}${path}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      await reject(response);
    }
    return {
      report: (await response.json()) as AnalysisReport,
      resultId: response.headers.get('X-Result-Id'),
    };
  }

  return {
    analyze: (request) => post('/analyze', request),
    chain: (request) => post('/chain', request),
    async examples() {
      const response = await fetch(`${base}/examples`);
      if (!response.ok) {
        await reject(response);
      }
      return (await response.json()) as ExampleEntry[];
    },
  };
}
