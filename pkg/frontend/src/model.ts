// Draft state and pure helpers: rational-string validation, coefficient-row
// parsing, and highlight-range extraction from sampled curves.

import type { CoeffEntry, SolveResponse } from "./api.js";

const RATIONAL = /^-?\d+(\/\d+)?$/;

export function isRational(text: string): boolean {
  const t = text.trim();
  if (!RATIONAL.test(t)) return false;
  const slash = t.indexOf("/");
  if (slash >= 0 && /^0+$/.test(t.slice(slash + 1))) return false;
  return true;
}

export interface HybridDraft {
  gamma3: CoeffEntry[];
  gamma4: CoeffEntry[];
  sLo: string;
  sHi: string;
}

export function parseCoeffRows(text: string): CoeffEntry[] {
  // one "k: c" pair per line; blank lines ignored
  const out: CoeffEntry[] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (!line) continue;
    const m = line.match(/^(\d+)\s*[:=]\s*(-?\d+(?:\/\d+)?)$/);
    if (!m) throw new Error(`cannot parse coefficient row: "${line}"`);
    const k = Number(m[1]);
    if (k < 1) throw new Error(`G_k indices start at 1 (got ${k})`);
    if (!isRational(m[2])) throw new Error(`bad rational "${m[2]}"`);
    out.push({ k, c: m[2] });
  }
  if (out.length === 0) throw new Error("empty hybrid");
  return out;
}

export function draftToRequest(d: HybridDraft) {
  return {
    gamma3: d.gamma3.map((e) => [e.k, e.c] as [number, string]),
    gamma4: d.gamma4.map((e) => [e.k, e.c] as [number, string]),
    s_lo: d.sLo,
    s_hi: d.sHi,
  };
}

export interface HighlightRange {
  from: number;
  to: number;
}

/** Contiguous s-ranges where any of the listed curves dips to <= 0. */
export function nonpositiveRanges(
  s: number[],
  curves: Record<string, number[]>,
  names: string[] = ["a1", "a2", "a3", "a4"],
): HighlightRange[] {
  const bad: boolean[] = s.map((_, i) =>
    names.some((n) => (curves[n]?.[i] ?? 1) <= 0),
  );
  const out: HighlightRange[] = [];
  let start: number | null = null;
  for (let i = 0; i < bad.length; i++) {
    if (bad[i] && start === null) start = i;
    if (!bad[i] && start !== null) {
      out.push({ from: s[start], to: s[i - 1] });
      start = null;
    }
  }
  if (start !== null) out.push({ from: s[start], to: s[s.length - 1] });
  return out;
}

/** Indices where a sampled curve crosses zero (sign change between samples). */
export function zeroCrossings(xs: number[], ys: number[]): number[] {
  const out: number[] = [];
  for (let i = 0; i + 1 < ys.length; i++) {
    if (ys[i] === 0 || ys[i] * ys[i + 1] < 0) out.push(i);
  }
  return out;
}

/** All published-pair verdicts positive <=> the UI paints the interval green. */
export function allCertifiedPositive(resp: SolveResponse): boolean {
  const names = Object.keys(resp.positivity);
  return names.length > 0 && names.every((n) => resp.positivity[n].positive);
}
