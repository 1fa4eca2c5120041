/**
 * Job runner: `node dist/cli.js <job.json>` reads one plot job, renders the
 * figure, and writes the SVG to the job's output path.
 *
 * Exit codes: 0 rendered, 1 invalid job or input schema, 2 I/O failure.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { resolve, dirname } from "node:path";

import { SchemaError } from "./csv.js";
import { renderJob } from "./figures.js";
import { JobSpec, JobSpecSchema } from "./schemas.js";

export function loadJob(path: string): JobSpec {
  let raw: string;
  try {
    raw = readFileSync(path, "utf-8");
  } catch (err) {
    throw new SchemaError(path, null, `cannot read job file: ${(err as Error).message}`);
  }
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch (err) {
    throw new SchemaError(path, null, `not valid JSON: ${(err as Error).message}`);
  }
  const result = JobSpecSchema.safeParse(doc);
  if (!result.success) {
    const issue = result.error.issues[0];
    const where = issue.path.length > 0 ? ` at '${issue.path.join(".")}'` : "";
    throw new SchemaError(path, null, `${issue.message}${where}`);
  }
  // input paths resolve relative to the job file
  const base = dirname(resolve(path));
  const job = result.data;
  if (job.kind === "availability-curves") {
    return {
      ...job,
      series: job.series.map((s) => ({ ...s, path: resolve(base, s.path) })),
      output: resolve(base, job.output),
    };
  }
  return { ...job, input: resolve(base, job.input), output: resolve(base, job.output) };
}

export function main(argv: string[]): number {
  const jobPath = argv[0];
  if (!jobPath) {
    process.stderr.write("usage: pointerlab-plots <job.json>\n");
    return 1;
  }
  try {
    const job = loadJob(jobPath);
    const { svg } = renderJob(job);
    try {
      writeFileSync(job.output, svg, "utf-8");
    } catch (err) {
      process.stderr.write(`cannot write ${job.output}: ${(err as Error).message}\n`);
      return 2;
    }
    process.stdout.write(`${job.output}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

const entry = process.argv[1] ? resolve(process.argv[1]) : "";
if (import.meta.url === `file://${entry}`) {
  process.exit(main(process.argv.slice(2)));
}
