// Minimal SVG line plotting as pure string builders, so the rendering logic
// is unit-testable without a DOM.

export interface PlotBox {
  width: number;
  height: number;
  padLeft: number;
  padBottom: number;
  padTop: number;
  padRight: number;
}

export const DEFAULT_BOX: PlotBox = {
  width: 460,
  height: 260,
  padLeft: 54,
  padBottom: 28,
  padTop: 10,
  padRight: 10,
};

export interface Scale {
  x(v: number): number;
  y(v: number): number;
  xDomain: [number, number];
  yDomain: [number, number];
}

export function makeScale(
  xs: number[],
  ysAll: number[][],
  box: PlotBox = DEFAULT_BOX,
): Scale {
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const ys of ysAll) {
    for (const v of ys) {
      if (Number.isFinite(v)) {
        yMin = Math.min(yMin, v);
        yMax = Math.max(yMax, v);
      }
    }
  }
  if (!(yMax > yMin)) {
    yMax = yMin + 1;
  }
  const innerW = box.width - box.padLeft - box.padRight;
  const innerH = box.height - box.padTop - box.padBottom;
  return {
    x: (v) => box.padLeft + ((v - xMin) / (xMax - xMin || 1)) * innerW,
    y: (v) => box.padTop + (1 - (v - yMin) / (yMax - yMin)) * innerH,
    xDomain: [xMin, xMax],
    yDomain: [yMin, yMax],
  };
}

export function polylinePath(xs: number[], ys: number[], sc: Scale): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(ys[i])) continue;
    const cmd = parts.length === 0 ? "M" : "L";
    parts.push(`${cmd}${sc.x(xs[i]).toFixed(2)},${sc.y(ys[i]).toFixed(2)}`);
  }
  return parts.join(" ");
}

export function ticks(domain: [number, number], n = 5): number[] {
  const [lo, hi] = domain;
  const out: number[] = [];
  for (let i = 0; i <= n; i++) out.push(lo + ((hi - lo) * i) / n);
  return out;
}

export interface Series {
  name: string;
  xs: number[];
  ys: number[];
  color: string;
}

export function renderChart(
  series: Series[],
  box: PlotBox = DEFAULT_BOX,
  highlights: { from: number; to: number; color: string }[] = [],
): string {
  if (series.length === 0) return "<svg></svg>";
  const sc = makeScale(
    series[0].xs,
    series.map((s) => s.ys),
    box,
  );
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${box.width}" height="${box.height}" viewBox="0 0 ${box.width} ${box.height}">`,
  ];
  for (const h of highlights) {
    const x0 = sc.x(h.from);
    const x1 = sc.x(h.to);
    parts.push(
      `<rect x="${x0.toFixed(2)}" y="${box.padTop}" width="${Math.max(
        x1 - x0,
        1,
      ).toFixed(2)}" height="${box.height - box.padTop - box.padBottom}" fill="${h.color}" opacity="0.25"/>`,
    );
  }
  // zero line when the y-domain straddles 0
  if (sc.yDomain[0] < 0 && sc.yDomain[1] > 0) {
    const y0 = sc.y(0);
    parts.push(
      `<line x1="${box.padLeft}" y1="${y0.toFixed(2)}" x2="${box.width - box.padRight}" y2="${y0.toFixed(2)}" stroke="#888" stroke-dasharray="4 3"/>`,
    );
  }
  for (const t of ticks(sc.xDomain)) {
    const x = sc.x(t);
    parts.push(
      `<text x="${x.toFixed(1)}" y="${box.height - 8}" font-size="10" text-anchor="middle">${t.toPrecision(4)}</text>`,
    );
  }
  for (const t of ticks(sc.yDomain, 4)) {
    const y = sc.y(t);
    parts.push(
      `<text x="${box.padLeft - 4}" y="${(y + 3).toFixed(1)}" font-size="10" text-anchor="end">${t.toPrecision(3)}</text>`,
    );
  }
  for (const s of series) {
    parts.push(
      `<path d="${polylinePath(s.xs, s.ys, sc)}" fill="none" stroke="${s.color}" stroke-width="1.5"><title>${s.name}</title></path>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
