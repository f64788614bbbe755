/**
 * Reader for onebit-mimo-sim sweep CSVs.
 *
 * Files begin with a versioned comment line (`# onebit-mimo-sim v1, seed=N`),
 * optionally followed by a crossing comment for antenna-comparison sweeps,
 * then a fixed-order header row. Unused numeric fields are empty strings and
 * parse to null.
 */

import fs from "node:fs";
import Papa from "papaparse";

export const EXPECTED_VERSION = "onebit-mimo-sim v1";

export interface SweepRow {
  scenario: string;
  m: number;
  k: number;
  rho_p_db: number;
  p_t_db: number;
  trials: number;
  mc_sum_rate: number | null;
  mc_stderr: number | null;
  cf_sum_rate: number | null;
  conv_sum_rate: number | null;
  case1_limit: number | null;
  case2_limit: number | null;
}

export interface Crossing {
  targetSumRate: number;
  oneBitM: number;
  conventionalM: number;
}

export interface SweepFile {
  version: string;
  seed: number;
  rows: SweepRow[];
  crossing: Crossing | null;
}

export class SchemaError extends Error {}

const NUMERIC_OPTIONAL = [
  "mc_sum_rate",
  "mc_stderr",
  "cf_sum_rate",
  "conv_sum_rate",
  "case1_limit",
  "case2_limit",
] as const;

function parseVersionLine(line: string): { version: string; seed: number } {
  const match = line.match(/^#\s*(.+?),\s*seed=(-?\d+)\s*$/);
  if (!match || match[1] !== EXPECTED_VERSION) {
    throw new SchemaError(
      `unsupported sweep CSV schema: expected "# ${EXPECTED_VERSION}, seed=<n>", got "${line}"`,
    );
  }
  return { version: match[1], seed: Number(match[2]) };
}

function parseCrossingLine(line: string): Crossing {
  const match = line.match(
    /^#\s*crossing\s+target_sum_rate=([-\d.eE+]+)\s+one_bit_m=(\d+)\s+conventional_m=(\d+)\s*$/,
  );
  if (!match) {
    throw new SchemaError(`malformed crossing comment: "${line}"`);
  }
  return {
    targetSumRate: Number(match[1]),
    oneBitM: Number(match[2]),
    conventionalM: Number(match[3]),
  };
}

export function parseSweepCsv(text: string): SweepFile {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || !lines[0].startsWith("#")) {
    throw new SchemaError("missing version comment on first line");
  }
  const { version, seed } = parseVersionLine(lines[0]);

  let crossing: Crossing | null = null;
  let body = 1;
  while (body < lines.length && lines[body].startsWith("#")) {
    if (lines[body].includes("crossing")) {
      crossing = parseCrossingLine(lines[body]);
    }
    body += 1;
  }

  const parsed = Papa.parse<Record<string, string>>(lines.slice(body).join("\n"), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`CSV body failed to parse: ${parsed.errors[0].message}`);
  }

  const rows: SweepRow[] = parsed.data.map((raw) => {
    const row: SweepRow = {
      scenario: raw.scenario,
      m: Number(raw.m),
      k: Number(raw.k),
      rho_p_db: Number(raw.rho_p_db),
      p_t_db: Number(raw.p_t_db),
      trials: Number(raw.trials),
      mc_sum_rate: null,
      mc_stderr: null,
      cf_sum_rate: null,
      conv_sum_rate: null,
      case1_limit: null,
      case2_limit: null,
    };
    for (const field of NUMERIC_OPTIONAL) {
      const value = raw[field];
      row[field] = value === "" || value === undefined ? null : Number(value);
    }
    return row;
  });
  return { version, seed, rows, crossing };
}

export function readSweepCsv(path: string): SweepFile {
  let text: string;
  try {
    text = fs.readFileSync(path, "utf8");
  } catch (err) {
    throw new Error(`cannot read sweep CSV at ${path}: ${(err as Error).message}`);
  }
  return parseSweepCsv(text);
}
