/**
 * Strict CSV loading with file/line context on every failure.
 *
 * Headers must match the documented pointerlab schemas exactly; numeric
 * fields reject anything Number() cannot parse losslessly.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { z } from "zod";

import {
  AVAILABILITY_HEADER,
  AvailabilityRow,
  AvailabilityRowSchema,
  SWEEP_HEADER,
  SweepRow,
  SweepRowSchema,
} from "./schemas.js";

/** Input rejected: carries the offending file and (1-based) line. */
export class SchemaError extends Error {
  constructor(
    readonly file: string,
    readonly line: number | null,
    detail: string,
  ) {
    super(line === null ? `${file}: ${detail}` : `${file}:${line}: ${detail}`);
    this.name = "SchemaError";
  }
}

function parseNumber(raw: string, file: string, line: number, column: string): number {
  const trimmed = raw.trim();
  if (trimmed === "") {
    throw new SchemaError(file, line, `empty value in column '${column}'`);
  }
  const value = Number(trimmed);
  if (!Number.isFinite(value)) {
    throw new SchemaError(file, line, `column '${column}' is not a finite number: '${raw}'`);
  }
  return value;
}

function parseBool(raw: string, file: string, line: number, column: string): boolean {
  if (raw === "true") return true;
  if (raw === "false") return false;
  throw new SchemaError(file, line, `column '${column}' must be true/false, got '${raw}'`);
}

function readRows(file: string, expectedHeader: readonly string[]): string[][] {
  let text: string;
  try {
    text = readFileSync(file, "utf-8");
  } catch (err) {
    throw new SchemaError(file, null, `cannot read file: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<string[]>(text.trimEnd(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(file, (first.row ?? 0) + 1, first.message);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new SchemaError(file, null, "file is empty");
  }
  const header = rows[0];
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new SchemaError(
      file,
      1,
      `header must be '${expectedHeader.join(",")}', got '${header.join(",")}'`,
    );
  }
  if (rows.length === 1) {
    throw new SchemaError(file, null, "no data rows");
  }
  for (const [i, row] of rows.entries()) {
    if (row.length !== expectedHeader.length) {
      throw new SchemaError(
        file,
        i + 1,
        `expected ${expectedHeader.length} columns, got ${row.length}`,
      );
    }
  }
  return rows.slice(1);
}

function validate<T>(schema: z.ZodType<T>, value: unknown, file: string, line: number): T {
  const result = schema.safeParse(value);
  if (!result.success) {
    const issue = result.error.issues[0];
    const where = issue.path.length > 0 ? ` at '${issue.path.join(".")}'` : "";
    throw new SchemaError(file, line, `${issue.message}${where}`);
  }
  return result.data;
}

export function loadAvailabilityCsv(file: string): AvailabilityRow[] {
  return readRows(file, AVAILABILITY_HEADER).map((row, i) => {
    const line = i + 2; // header is line 1
    return validate(
      AvailabilityRowSchema,
      {
        t: parseNumber(row[0], file, line, "t"),
        availability: parseNumber(row[1], file, line, "availability"),
      },
      file,
      line,
    );
  });
}

export function loadSweepCsv(file: string): SweepRow[] {
  return readRows(file, SWEEP_HEADER).map((row, i) => {
    const line = i + 2;
    return validate(
      SweepRowSchema,
      {
        n: parseNumber(row[0], file, line, "n"),
        ensemble: row[1],
        seed: parseNumber(row[2], file, line, "seed"),
        longest_window: parseNumber(row[3], file, line, "longest_window"),
        theta: parseNumber(row[4], file, line, "theta"),
        theta_eps: parseNumber(row[5], file, line, "theta_eps"),
        theta_ratio: parseNumber(row[6], file, line, "theta_ratio"),
        reliability: row[7],
        accessibility: row[8],
        in_region: parseBool(row[9], file, line, "in_region"),
      },
      file,
      line,
    );
  });
}
