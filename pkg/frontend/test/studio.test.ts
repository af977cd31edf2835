// Integration tests against the real backend over its HTTP interface, plus
// unit tests of the pure rendering/model helpers.  The backend process is
// spawned once for the suite; sampled curve values are cross-checked against
// the CLI's CSV export to 1e-9 relative.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { StudioApi } from "../src/api.js";
import {
  allCertifiedPositive,
  isRational,
  nonpositiveRanges,
  parseCoeffRows,
  zeroCrossings,
} from "../src/model.js";
import { makeScale, polylinePath, renderChart } from "../src/plot.js";

const PORT = 8123 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const REPO = join(__dirname, "..", "..");

let server: ChildProcess;
let tmp: string;

async function waitReady(): Promise<void> {
  for (let i = 0; i < 120; i++) {
    try {
      const res = await fetch(`${BASE}/curves?kind=transition`);
      if (res.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 500));
  }
  throw new Error("backend did not come up");
}

beforeAll(async () => {
  tmp = mkdtempSync(join(tmpdir(), "studio-"));
  server = spawn(
    "python3",
    ["-m", "fivepoint.cli", "serve", "--port", String(PORT)],
    { cwd: REPO, stdio: "ignore", env: process.env },
  );
  await waitReady();
}, 120_000);

afterAll(() => {
  server?.kill();
  rmSync(tmp, { recursive: true, force: true });
});

function exportCsv(kind: string, pair: string): number[][] {
  const out = join(tmp, `${kind}-${pair}.csv`);
  const res = spawnSync(
    "python3",
    [
      "-m",
      "fivepoint.cli",
      "export",
      "plots",
      "--kind",
      kind,
      "--pair",
      pair,
      "--out",
      out,
    ],
    { cwd: REPO },
  );
  expect(res.status).toBe(0);
  const lines = readFileSync(out, "utf-8").trim().split("\n").slice(1);
  return lines.map((l) => l.split(",").map(Number));
}

describe("model helpers", () => {
  it("validates rationals", () => {
    expect(isRational("-25")).toBe(true);
    expect(isRational("13/2")).toBe(true);
    expect(isRational("1/0")).toBe(false);
    expect(isRational("1.5")).toBe(false);
  });

  it("parses coefficient rows", () => {
    expect(parseCoeffRows("1: -25\n5: 1")).toEqual([
      { k: 1, c: "-25" },
      { k: 5, c: "1" },
    ]);
    expect(() => parseCoeffRows("0: 1")).toThrow();
    expect(() => parseCoeffRows("bogus")).toThrow();
  });

  it("extracts nonpositive highlight ranges", () => {
    const s = [1, 2, 3, 4, 5];
    const curves = { a1: [1, -1, -2, 1, 1], a2: [1, 1, 1, 1, 0] };
    expect(nonpositiveRanges(s, curves)).toEqual([
      { from: 2, to: 3 },
      { from: 5, to: 5 },
    ]);
  });

  it("finds zero crossings", () => {
    expect(zeroCrossings([0, 1, 2, 3], [1, -1, 2, 3])).toEqual([0, 1]);
  });
});

describe("plot rendering", () => {
  it("builds monotone svg paths", () => {
    const xs = [0, 1, 2];
    const ys = [0, 1, 0];
    const sc = makeScale(xs, [ys]);
    const path = polylinePath(xs, ys, sc);
    expect(path.startsWith("M")).toBe(true);
    expect(path.split("L").length).toBe(3);
    const svg = renderChart([{ name: "t", xs, ys, color: "#000" }]);
    expect(svg).toContain("<svg");
    expect(svg).toContain("path");
  });
});

describe("backend integration", () => {
  const api = new StudioApi(BASE);

  it(
    "published pairs match the CSV export to 1e-9 relative",
    { timeout: 300_000 },
    async () => {
      for (const pair of ["p1", "p2", "p3"]) {
        const resp = await api.solve({ pair, certify: false, samples: 120 });
        const csv = exportCsv("coefficients", pair);
        expect(csv.length).toBe(resp.s.length);
        for (let i = 0; i < csv.length; i++) {
          expect(Math.abs(csv[i][0] - resp.s[i])).toBeLessThan(1e-12);
          for (const [col, name] of [
            [2, "a1"],
            [3, "a2"],
            [4, "a3"],
            [5, "a4"],
          ] as [number, string][]) {
            const want = csv[i][col];
            const got = resp.curves[name][i];
            const tol = 1e-9 * Math.max(1, Math.abs(want));
            expect(Math.abs(got - want)).toBeLessThan(tol);
          }
        }
      }
    },
  );

  it(
    "positivity highlighting agrees with rigorous verdicts on the pairs",
    { timeout: 300_000 },
    async () => {
      for (const pair of ["p1", "p2", "p3"]) {
        const resp = await api.solve({ pair, certify: true });
        // backend certifies positivity; sampled curves agree (no red ranges)
        expect(allCertifiedPositive(resp)).toBe(true);
        expect(nonpositiveRanges(resp.s, resp.curves)).toEqual([]);
      }
    },
  );

  it("custom drafts solve and malformed drafts 400", async () => {
    const resp = await api.solve({
      gamma3: [[4, "1"]],
      gamma4: [[6, "1"]],
      s_lo: "1",
      s_hi: "6",
      certify: false,
    });
    expect(resp.matrix.length).toBe(5);
    await expect(
      api.solve({ gamma3: [[0, "zz"]], gamma4: [] }),
    ).rejects.toThrow(/400/);
  });

  it("competition panel verdicts", { timeout: 120_000 }, async () => {
    const winning = await api.competition("g2");
    expect(Math.min(...winning.rows.map((r) => r[1]))).toBeGreaterThan(0);
    const losing = await api.competition("g10");
    expect(Math.min(...losing.rows.map((r) => r[1]))).toBeLessThan(0);
    const ys = losing.rows.map((r) => r[1]);
    expect(zeroCrossings(losing.rows.map((r) => r[0]), ys).length)
      .toBeGreaterThan(0);
  });

  it("comparison curve vanishes at the matching nodes", async () => {
    const resp = await api.comparison("p1", 2.0);
    for (const node of [Math.SQRT2, Math.sqrt(3), 2]) {
      const nearest = resp.rows.reduce((acc, row) =>
        Math.abs(row[0] - node) < Math.abs(acc[0] - node) ? row : acc,
      );
      expect(Math.abs(nearest[1])).toBeLessThan(5e-3);
    }
  });
});
