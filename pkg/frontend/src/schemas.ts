/**
 * Zod schemas for every artifact this package consumes or emits.
 *
 * Inputs follow the documented pointerlab CLI formats: availability CSVs
 * (`t,availability` header) and sweep CSVs (ten named columns).  The output
 * side is the figure manifest embedded in each rendered SVG, which is what
 * tests assert against.
 */

import { z } from "zod";

const finite = z.number().finite();

export const AvailabilityRowSchema = z
  .object({
    t: finite.nonnegative(),
    availability: finite.min(0).max(1),
  })
  .strict();
export type AvailabilityRow = z.infer<typeof AvailabilityRowSchema>;

export const AVAILABILITY_HEADER = ["t", "availability"] as const;

export const SWEEP_HEADER = [
  "n",
  "ensemble",
  "seed",
  "longest_window",
  "theta",
  "theta_eps",
  "theta_ratio",
  "reliability",
  "accessibility",
  "in_region",
] as const;

export const SweepRowSchema = z
  .object({
    n: z.number().int().min(1),
    ensemble: z.string().min(1),
    seed: z.number().int(),
    longest_window: finite.nonnegative(),
    theta: finite.min(0).max(1),
    theta_eps: finite.min(0),
    theta_ratio: finite.min(0),
    reliability: z.enum([
      "reliable_over_window",
      "not_reliable",
      "perfectly_reliable_on_horizon",
    ]),
    accessibility: z.enum(["nonfunctional", "accessible", "inaccessible"]),
    in_region: z.boolean(),
  })
  .strict();
export type SweepRow = z.infer<typeof SweepRowSchema>;

const SeriesInputSchema = z
  .object({
    path: z.string().min(1),
    label: z.string().min(1),
  })
  .strict();
export type SeriesInput = z.infer<typeof SeriesInputSchema>;

const RegionSchema = z
  .object({
    n: z.tuple([z.number().int(), z.number().int()]),
    t: z.tuple([finite, finite]),
  })
  .strict();
export type Region = z.infer<typeof RegionSchema>;

export const JobSpecSchema = z.discriminatedUnion("kind", [
  z
    .object({
      kind: z.literal("availability-curves"),
      series: z.array(SeriesInputSchema).min(1),
      output: z.string().min(1),
      title: z.string().optional(),
    })
    .strict(),
  z
    .object({
      kind: z.literal("nt-diagram"),
      input: z.string().min(1),
      region: RegionSchema,
      output: z.string().min(1),
      title: z.string().optional(),
    })
    .strict(),
]);
export type JobSpec = z.infer<typeof JobSpecSchema>;

/** Machine-readable description of a rendered figure, embedded in its SVG. */
export const FigureManifestSchema = z.discriminatedUnion("kind", [
  z
    .object({
      kind: z.literal("availability-curves"),
      series: z
        .array(
          z
            .object({
              label: z.string().min(1),
              points: z.number().int().min(1),
              tRange: z.tuple([finite, finite]),
              availabilityRange: z.tuple([finite, finite]),
            })
            .strict(),
        )
        .min(1),
    })
    .strict(),
  z
    .object({
      kind: z.literal("nt-diagram"),
      region: RegionSchema,
      points: z
        .array(
          z
            .object({
              n: z.number().int(),
              duration: finite,
              ensemble: z.string(),
              seed: z.number().int(),
              inRegion: z.boolean(),
            })
            .strict(),
        )
        .min(1),
      markers: z
        .object({ ordered: z.number().int(), disordered: z.number().int() })
        .strict(),
    })
    .strict(),
]);
export type FigureManifest = z.infer<typeof FigureManifestSchema>;
