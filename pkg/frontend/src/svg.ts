/**
 * Minimal deterministic SVG assembly: linear scales, round ticks, and the
 * handful of elements the two figure kinds need.  No DOM, no timestamps, so
 * identical inputs render byte-identical files.
 */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Round tick positions covering the domain, roughly `count` of them. */
export function ticks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  const span = hi - lo || 1;
  const rawStep = span / Math.max(count - 1, 1);
  const power = Math.floor(Math.log10(rawStep));
  const base = 10 ** power;
  const step = [1, 2, 5, 10].map((m) => m * base).find((s) => span / s <= count) ?? 10 * base;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function formatTick(value: number): string {
  return Number(value.toPrecision(10)).toString();
}

const XML_ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

export function escapeXml(text: string): string {
  return text.replace(/[&<>"]/g, (c) => XML_ESCAPES[c]);
}

export function attr(pairs: Record<string, string | number>): string {
  return Object.entries(pairs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? round(v) : escapeXml(v)}"`)
    .join(" ");
}

/** Two-decimal pixel coordinates keep files small and diffs stable. */
export function round(value: number): string {
  return (Math.round(value * 100) / 100).toString();
}

export function polyline(points: Array<[number, number]>, style: Record<string, string | number>): string {
  const pts = points.map(([x, y]) => `${round(x)},${round(y)}`).join(" ");
  return `<polyline points="${pts}" ${attr(style)}/>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  style: Record<string, string | number> = {},
): string {
  return `<text ${attr({ x, y, ...style })}>${escapeXml(content)}</text>`;
}

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  x: Scale;
  y: Scale;
}

export function makeFrame(
  xDomain: [number, number],
  yDomain: [number, number],
  width = 800,
  height = 500,
): Frame {
  const margin = { top: 40, right: 30, bottom: 55, left: 70 };
  return {
    width,
    height,
    margin,
    x: linearScale(xDomain, [margin.left, width - margin.right]),
    y: linearScale(yDomain, [height - margin.bottom, margin.top]),
  };
}

export function axes(frame: Frame, xLabel: string, yLabel: string): string {
  const { x, y, width, height, margin } = frame;
  const parts: string[] = [];
  const axisStyle = { stroke: "#333", "stroke-width": 1 };
  parts.push(
    `<line ${attr({ x1: x.range[0], y1: y.range[0], x2: x.range[1], y2: y.range[0], ...axisStyle })}/>`,
    `<line ${attr({ x1: x.range[0], y1: y.range[0], x2: x.range[0], y2: y.range[1], ...axisStyle })}/>`,
  );
  for (const v of ticks(x.domain)) {
    const px = x(v);
    parts.push(
      `<line ${attr({ x1: px, y1: y.range[0], x2: px, y2: y.range[0] + 5, ...axisStyle })}/>`,
      text(px, y.range[0] + 20, formatTick(v), {
        "text-anchor": "middle",
        "font-size": 12,
        fill: "#333",
      }),
    );
  }
  for (const v of ticks(y.domain)) {
    const py = y(v);
    parts.push(
      `<line ${attr({ x1: x.range[0] - 5, y1: py, x2: x.range[0], y2: py, ...axisStyle })}/>`,
      text(x.range[0] - 9, py + 4, formatTick(v), {
        "text-anchor": "end",
        "font-size": 12,
        fill: "#333",
      }),
    );
  }
  parts.push(
    text((x.range[0] + x.range[1]) / 2, height - 12, xLabel, {
      "text-anchor": "middle",
      "font-size": 14,
      fill: "#111",
    }),
    `<g transform="rotate(-90 18 ${(y.range[0] + y.range[1]) / 2})">` +
      text(18, (y.range[0] + y.range[1]) / 2, yLabel, {
        "text-anchor": "middle",
        "font-size": 14,
        fill: "#111",
      }) +
      "</g>",
  );
  return parts.join("\n");
}

export function document(
  frame: Frame,
  body: string,
  manifestJson: string,
  title?: string,
): string {
  const heading = title
    ? text(frame.width / 2, 24, title, {
        "text-anchor": "middle",
        "font-size": 16,
        "font-weight": "bold",
        fill: "#111",
      })
    : "";
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">`,
    `<metadata id="figure-data">${escapeXml(manifestJson)}</metadata>`,
    `<rect width="${frame.width}" height="${frame.height}" fill="white"/>`,
    heading,
    body,
    "</svg>",
    "",
  ].join("\n");
}
