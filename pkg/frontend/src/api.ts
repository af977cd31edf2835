// Typed client for the fivepoint studio backend.  The UI performs no
// mathematics of its own: every number rendered comes from these responses.

export interface CoeffEntry {
  k: number;
  c: string; // exact rational as "p/q"
}

export interface SolveRequest {
  pair?: string;
  gamma3?: [number, string][];
  gamma4?: [number, string][];
  s_lo?: string;
  s_hi?: string;
  samples?: number;
  certify?: boolean;
}

export interface PositivityVerdict {
  positive: boolean;
  pieces: number;
  interval: [string, string];
}

export interface SolveResponse {
  pair: string;
  matrix: string[][];
  s: number[];
  curves: Record<string, number[]>;
  positivity: Record<string, PositivityVerdict>;
}

export interface CurveResponse {
  columns: string[];
  rows: number[][];
}

export interface ShinResponse {
  lo: string;
  hi: string;
  lo_decimal: number;
  hi_decimal: number;
  width: number;
  witness_x: string;
}

export class StudioApi {
  constructor(readonly base: string) {}

  private async json<T>(res: Response): Promise<T> {
    if (!res.ok) {
      const body = await res.text();
      throw new Error(`backend ${res.status}: ${body}`);
    }
    return (await res.json()) as T;
  }

  async solve(req: SolveRequest): Promise<SolveResponse> {
    const res = await fetch(`${this.base}/hybrid/solve`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
    return this.json<SolveResponse>(res);
  }

  async comparison(pair: string, s: number): Promise<CurveResponse> {
    const q = new URLSearchParams({ kind: "comparison", pair, s: String(s) });
    return this.json<CurveResponse>(await fetch(`${this.base}/curves?${q}`));
  }

  async competition(hybrid: string): Promise<CurveResponse> {
    const q = new URLSearchParams({ hybrid });
    return this.json<CurveResponse>(
      await fetch(`${this.base}/competition?${q}`),
    );
  }

  async shin(digits = 4): Promise<ShinResponse> {
    const q = new URLSearchParams({ digits: String(digits) });
    return this.json<ShinResponse>(await fetch(`${this.base}/shin?${q}`));
  }
}
