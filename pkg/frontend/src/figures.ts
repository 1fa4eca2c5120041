/**
 * Figure builders: overlaid availability curves and the size-vs-window
 * scatter with its admissible box.  Pure consumers — every number shown
 * comes straight from the input files.
 */

import { SchemaError, loadAvailabilityCsv, loadSweepCsv } from "./csv.js";
import {
  AvailabilityRow,
  FigureManifest,
  JobSpec,
  Region,
  SweepRow,
} from "./schemas.js";
import { attr, axes, document, makeFrame, polyline, round, text } from "./svg.js";

// matplotlib default cycle, matching the usual N = 5 / 10 / 100 coloring
const PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

export interface RenderedFigure {
  svg: string;
  manifest: FigureManifest;
}

export function buildAvailabilityFigure(
  job: Extract<JobSpec, { kind: "availability-curves" }>,
): RenderedFigure {
  const series: Array<{ label: string; rows: AvailabilityRow[] }> = job.series.map(
    (s) => ({ label: s.label, rows: loadAvailabilityCsv(s.path) }),
  );

  const tMax = Math.max(...series.flatMap(({ rows }) => rows.map((r) => r.t)));
  const tMin = Math.min(...series.flatMap(({ rows }) => rows.map((r) => r.t)));
  const frame = makeFrame([tMin, tMax], [0, 1]);

  const body: string[] = [axes(frame, "time", "availability")];
  series.forEach(({ label, rows }, i) => {
    const color = PALETTE[i % PALETTE.length];
    body.push(
      polyline(
        rows.map((r) => [frame.x(r.t), frame.y(r.availability)]),
        { fill: "none", stroke: color, "stroke-width": 1.5, "data-series": label },
      ),
    );
    const ly = frame.margin.top + 18 * i + 8;
    const lx = frame.width - frame.margin.right - 110;
    body.push(
      `<line ${attr({ x1: lx, y1: ly - 4, x2: lx + 24, y2: ly - 4, stroke: color, "stroke-width": 2 })}/>`,
      text(lx + 30, ly, label, { "font-size": 13, fill: "#111" }),
    );
  });

  const manifest: FigureManifest = {
    kind: "availability-curves",
    series: series.map(({ label, rows }) => ({
      label,
      points: rows.length,
      tRange: [rows[0].t, rows[rows.length - 1].t],
      availabilityRange: [
        Math.min(...rows.map((r) => r.availability)),
        Math.max(...rows.map((r) => r.availability)),
      ],
    })),
  };
  return {
    svg: document(frame, body.join("\n"), JSON.stringify(manifest), job.title),
    manifest,
  };
}

function markerFamily(row: SweepRow): "ordered" | "disordered" {
  if (row.ensemble.startsWith("ordered")) return "ordered";
  if (row.ensemble.startsWith("disordered")) return "disordered";
  throw new SchemaError("sweep", null, `unknown ensemble id '${row.ensemble}'`);
}

export function buildNtDiagram(
  job: Extract<JobSpec, { kind: "nt-diagram" }>,
): RenderedFigure {
  const rows = loadSweepCsv(job.input);
  const region: Region = job.region;

  const nValues = rows.map((r) => r.n).concat(region.n);
  const tValues = rows.map((r) => r.longest_window).concat(region.t);
  const pad = (lo: number, hi: number): [number, number] => {
    const span = hi - lo || 1;
    return [lo - 0.06 * span, hi + 0.06 * span];
  };
  const frame = makeFrame(
    pad(Math.min(...nValues), Math.max(...nValues)),
    pad(Math.min(...tValues), Math.max(...tValues)),
  );

  const body: string[] = [axes(frame, "apparatus qubits", "longest window duration")];

  const x0 = frame.x(region.n[0]);
  const x1 = frame.x(region.n[1]);
  const y0 = frame.y(region.t[0]);
  const y1 = frame.y(region.t[1]);
  body.push(
    `<rect ${attr({
      x: Math.min(x0, x1),
      y: Math.min(y0, y1),
      width: Math.abs(x1 - x0),
      height: Math.abs(y1 - y0),
      fill: "#2ca02c",
      "fill-opacity": 0.12,
      stroke: "#2ca02c",
      "stroke-dasharray": "6 3",
      "data-role": "region",
    })}/>`,
    text(Math.min(x0, x1) + 6, Math.min(y0, y1) + 16, "better", {
      "font-size": 12,
      fill: "#2ca02c",
    }),
    text(Math.max(x0, x1) - 6, Math.max(y0, y1) - 6, "worse", {
      "font-size": 12,
      fill: "#d62728",
      "text-anchor": "end",
    }),
  );

  let ordered = 0;
  let disordered = 0;
  for (const row of rows) {
    const cx = frame.x(row.n);
    const cy = frame.y(row.longest_window);
    const family = markerFamily(row);
    const common = {
      fill: row.in_region ? "#2ca02c" : "#d62728",
      "fill-opacity": 0.85,
      stroke: "#333",
      "stroke-width": 0.7,
      "data-family": family,
    };
    if (family === "ordered") {
      ordered += 1;
      body.push(`<circle ${attr({ cx, cy, r: 5, ...common })}/>`);
    } else {
      disordered += 1;
      const d = 6;
      const pts = [
        [cx, cy - d],
        [cx + d, cy],
        [cx, cy + d],
        [cx - d, cy],
      ]
        .map(([px, py]) => `${round(px)},${round(py)}`)
        .join(" ");
      body.push(`<polygon points="${pts}" ${attr(common)}/>`);
    }
  }

  const manifest: FigureManifest = {
    kind: "nt-diagram",
    region,
    points: rows.map((r) => ({
      n: r.n,
      duration: r.longest_window,
      ensemble: r.ensemble,
      seed: r.seed,
      inRegion: r.in_region,
    })),
    markers: { ordered, disordered },
  };
  return {
    svg: document(frame, body.join("\n"), JSON.stringify(manifest), job.title),
    manifest,
  };
}

export function renderJob(job: JobSpec): RenderedFigure {
  return job.kind === "availability-curves"
    ? buildAvailabilityFigure(job)
    : buildNtDiagram(job);
}
