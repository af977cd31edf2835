// Browser wiring: read the draft, call the backend, render the three panels.
// Concurrent requests resolve last-write-wins per panel.

import { StudioApi } from "./api.js";
import {
  allCertifiedPositive,
  draftToRequest,
  nonpositiveRanges,
  parseCoeffRows,
} from "./model.js";
import { renderChart, Series } from "./plot.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

const api = new StudioApi(
  (window as any).STUDIO_BACKEND ?? "http://127.0.0.1:8777",
);

const panelSeq: Record<string, number> = {};

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function setPanel(id: string, seq: number, html: string) {
  if ((panelSeq[id] ?? 0) > seq) return; // a newer request already landed
  panelSeq[id] = seq;
  byId(id).innerHTML = html;
}

let seqCounter = 0;

async function solveAndRender() {
  const seq = ++seqCounter;
  const status = byId<HTMLSpanElement>("status");
  try {
    const preset = byId<HTMLSelectElement>("preset").value;
    const req =
      preset !== "custom"
        ? { pair: preset, certify: true }
        : {
            ...draftToRequest({
              gamma3: parseCoeffRows(byId<HTMLTextAreaElement>("gamma3").value),
              gamma4: parseCoeffRows(byId<HTMLTextAreaElement>("gamma4").value),
              sLo: byId<HTMLInputElement>("slo").value,
              sHi: byId<HTMLInputElement>("shi").value,
            }),
            certify: byId<HTMLInputElement>("certify").checked,
          };
    status.textContent = "solving…";
    const resp = await api.solve(req);
    const series: Series[] = ["a1", "a2", "a3", "a4"].map((name, i) => ({
      name,
      xs: resp.s,
      ys: resp.curves[name],
      color: COLORS[i],
    }));
    const sampledBad = nonpositiveRanges(resp.s, resp.curves);
    const certified = allCertifiedPositive(resp);
    const highlights = sampledBad.map((r) => ({ ...r, color: "#d62728" }));
    if (sampledBad.length === 0) {
      highlights.push({
        from: resp.s[0],
        to: resp.s[resp.s.length - 1],
        color: certified ? "#2ca02c" : "#cccc66",
      });
    }
    setPanel("coeff-plot", seq, renderChart(series, undefined, highlights));
    setPanel(
      "coeff-note",
      seq,
      certified
        ? `<b>certified:</b> a1..a4 &gt; 0 on the interval (rigorous)`
        : sampledBad.length
          ? `<b>warning:</b> sampled nonpositive ranges ${sampledBad
              .map((r) => `[${r.from.toFixed(3)}, ${r.to.toFixed(3)}]`)
              .join(", ")}`
          : `sampled positive; no certificate requested`,
    );
    const matrix = resp.matrix
      .map((row) => row.map((v) => `<td>${v}</td>`).join(""))
      .join("</tr><tr>");
    setPanel("matrix", seq, `<table><tr>${matrix}</tr></table>`);
    status.textContent = `solved ${resp.pair}`;
  } catch (err) {
    status.textContent = String(err);
  }
}

async function comparisonAndRender() {
  const seq = ++seqCounter;
  const pair = byId<HTMLSelectElement>("cmp-pair").value;
  const s = Number(byId<HTMLInputElement>("cmp-s").value);
  const resp = await api.comparison(pair, s);
  const xs = resp.rows.map((r) => r[0]);
  const ys = resp.rows.map((r) => r[1]);
  setPanel(
    "cmp-plot",
    seq,
    renderChart([{ name: "1 - interpolant/target", xs, ys, color: COLORS[0] }]),
  );
}

async function competitionAndRender() {
  const seq = ++seqCounter;
  const hybrid = byId<HTMLInputElement>("comp-hybrid").value;
  try {
    const resp = await api.competition(hybrid);
    const xs = resp.rows.map((r) => r[0]);
    const ys = resp.rows.map((r) => r[1]);
    const min = Math.min(...ys);
    setPanel(
      "comp-plot",
      seq,
      renderChart([{ name: hybrid, xs, ys, color: COLORS[1] }]),
    );
    setPanel(
      "comp-note",
      seq,
      min > 0
        ? "reference configuration wins everywhere under this judge"
        : "reference configuration loses somewhere (zero crossing shown)",
    );
  } catch (err) {
    setPanel("comp-note", seq, String(err));
  }
}

async function shinAndRender() {
  const seq = ++seqCounter;
  const resp = await api.shin(4);
  setPanel(
    "shin-note",
    seq,
    `transition exponent in (${resp.lo_decimal.toFixed(7)}, ${resp.hi_decimal.toFixed(7)}), width ${resp.width.toExponential(1)}`,
  );
}

export function wire() {
  byId<HTMLButtonElement>("solve").addEventListener("click", solveAndRender);
  byId<HTMLButtonElement>("cmp-go").addEventListener(
    "click",
    comparisonAndRender,
  );
  byId<HTMLButtonElement>("comp-go").addEventListener(
    "click",
    competitionAndRender,
  );
  byId<HTMLButtonElement>("shin-go").addEventListener("click", shinAndRender);
  byId<HTMLSelectElement>("preset").addEventListener("change", () => {
    const custom = byId<HTMLSelectElement>("preset").value === "custom";
    byId<HTMLDivElement>("custom-rows").style.display = custom ? "" : "none";
  });
  solveAndRender();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", wire);
}
