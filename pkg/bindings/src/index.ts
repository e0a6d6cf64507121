/**
 * Node bindings for the maskmetrics segmentation-evaluation tool.
 *
 * In-memory integer label arrays go in; parsed per-class scores, macro and
 * weighted aggregates, and undefined-entry reasons come back. The arrays
 * are serialized into the tool's wire formats (PGM / raw volume pairs) in
 * a temporary directory and evaluated by the `maskmetrics` CLI in a child
 * process, so calls never block the event loop on computation and input
 * buffers are never touched.
 *
 * Reports are parsed from the CLI's deterministic JSON, whose floats carry
 * 17 significant digits: the numbers seen here are bit-identical to the
 * core evaluator's doubles.
 */
import { execFile } from "node:child_process";
import { mkdtemp, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { writeMask } from "./files.js";
import { arrayView, type ArrayView, type LabelData } from "./view.js";

export { arrayView, MAX_LABEL } from "./view.js";
export type { ArrayView, LabelData } from "./view.js";

export type Mode = "auto" | "binary" | "multiclass";
export type Policy = "perfect-empty" | "zero" | "one" | "error";
export type HausdorffAlgo = "naive" | "edt";

export interface EvaluateOptions {
  mode?: Mode;
  policy?: Policy;
  /** physical size of a pixel/voxel along each axis */
  spacing?: readonly number[];
  hdAlgo?: HausdorffAlgo;
  includeBackground?: boolean;
  /** command used to launch the evaluator CLI; MASKMETRICS_CLI overrides */
  cli?: readonly string[];
}

export interface MetricResult {
  /** class label -> score; null where the entry is undefined */
  perClass: Record<string, number | null>;
  /** class label (or "all") -> why that entry is undefined */
  undefinedReasons: Record<string, string>;
  macro: number | null;
  weighted: number | null;
  /** whole-table score (adjusted Rand index only) */
  all?: number | null;
}

export interface Report {
  mode: Mode;
  classes: number[];
  shape: number[];
  metrics: Record<string, MetricResult>;
}

/** Exit codes of the evaluator CLI. */
export const EXIT_CODES = {
  shapeMismatch: 2,
  io: 3,
  metricUndefined: 4,
  usage: 5,
} as const;

/** Error raised when the evaluator CLI rejects a call; `code` holds the
 * CLI exit code and `message` its diagnostic. */
export class CoreError extends Error {
  constructor(
    readonly code: number,
    message: string,
  ) {
    super(message);
    this.name = "CoreError";
  }
}

export type MaskInput = ArrayView | { shape: readonly number[]; data: LabelData };

function toView(input: MaskInput): ArrayView {
  if ("dtype" in input && "elementWidth" in input) {
    return input;
  }
  return arrayView(input.shape, input.data);
}

function cliCommand(options: EvaluateOptions): string[] {
  if (options.cli && options.cli.length > 0) return [...options.cli];
  const fromEnv = process.env.MASKMETRICS_CLI;
  if (fromEnv && fromEnv.trim() !== "") return fromEnv.trim().split(/\s+/);
  return ["maskmetrics"];
}

function cliFlags(options: EvaluateOptions): string[] {
  const flags: string[] = ["--format", "json", "--no-timings"];
  if (options.mode) flags.push("--mode", options.mode);
  if (options.policy) flags.push("--policy", options.policy);
  if (options.spacing) flags.push("--spacing", options.spacing.join(","));
  if (options.hdAlgo) flags.push("--hd-algo", options.hdAlgo);
  if (options.includeBackground !== undefined) {
    flags.push("--include-background", options.includeBackground ? "true" : "false");
  }
  return flags;
}

function execCli(
  argv: string[],
): Promise<{ stdout: string }> {
  return new Promise((resolve, reject) => {
    const [command, ...args] = argv;
    execFile(
      command,
      args,
      { maxBuffer: 64 * 1024 * 1024 },
      (error, stdout, stderr) => {
        if (error) {
          const code = typeof error.code === "number" ? error.code : -1;
          reject(new CoreError(code, stderr.trim() || error.message));
          return;
        }
        resolve({ stdout });
      },
    );
  });
}

interface RawBlock {
  per_class: Record<string, number | null>;
  all?: number | null;
  undefined: Record<string, string>;
  macro: number | null;
  weighted: number | null;
}

function toMetricResult(block: RawBlock): MetricResult {
  const result: MetricResult = {
    perClass: block.per_class,
    undefinedReasons: block.undefined,
    macro: block.macro,
    weighted: block.weighted,
  };
  if ("all" in block) result.all = block.all;
  return result;
}

/** Run the CLI once over both masks and return the parsed full report. */
export async function evaluateReport(
  truth: MaskInput,
  pred: MaskInput,
  metrics: readonly string[] | "all" = "all",
  options: EvaluateOptions = {},
): Promise<Report> {
  const truthView = toView(truth);
  const predView = toView(pred);
  const dir = await mkdtemp(join(tmpdir(), "maskmetrics-"));
  try {
    const truthPath = await writeMask(truthView, dir, "truth");
    const predPath = await writeMask(predView, dir, "pred");
    const argv = [
      ...cliCommand(options),
      "--truth", truthPath,
      "--pred", predPath,
      "--metrics", metrics === "all" ? "all" : metrics.join(","),
      ...cliFlags(options),
    ];
    const { stdout } = await execCli(argv);
    const doc = JSON.parse(stdout) as {
      mode: Mode;
      classes: number[];
      shape: number[];
      metrics: Record<string, RawBlock>;
    };
    const out: Record<string, MetricResult> = {};
    for (const [name, block] of Object.entries(doc.metrics)) {
      out[name] = toMetricResult(block);
    }
    return { mode: doc.mode, classes: doc.classes, shape: doc.shape, metrics: out };
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

/** Evaluate one metric; resolves to its per-class scores and aggregates. */
export async function evaluate(
  truth: MaskInput,
  pred: MaskInput,
  metric = "dice",
  options: EvaluateOptions = {},
): Promise<MetricResult> {
  const report = await evaluateReport(truth, pred, [metric], options);
  const blocks = Object.values(report.metrics);
  if (blocks.length !== 1) {
    throw new CoreError(-1, `expected one metric block, got ${blocks.length}`);
  }
  return blocks[0];
}

type MetricFn = (
  truth: MaskInput,
  pred: MaskInput,
  options?: EvaluateOptions,
) => Promise<MetricResult>;

function metricFn(name: string): MetricFn {
  return (truth, pred, options = {}) => evaluate(truth, pred, name, options);
}

export const dice = metricFn("dice");
export const iou = metricFn("iou");
export const sensitivity = metricFn("sensitivity");
export const specificity = metricFn("specificity");
export const precision = metricFn("precision");
export const accuracy = metricFn("accuracy");
export const balanced_accuracy = metricFn("balanced_accuracy");
export const adjusted_rand_index = metricFn("adjusted_rand_index");
export const auc = metricFn("auc");
export const kappa = metricFn("kappa");
export const volumetric_similarity = metricFn("volumetric_similarity");
export const hausdorff = metricFn("hausdorff");
export const avg_hausdorff = metricFn("avg_hausdorff");

export const METRIC_NAMES = [
  "accuracy",
  "adjusted_rand_index",
  "auc",
  "avg_hausdorff",
  "balanced_accuracy",
  "dice",
  "hausdorff",
  "iou",
  "kappa",
  "precision",
  "sensitivity",
  "specificity",
  "volumetric_similarity",
] as const;
