/**
 * VGG Image Annotator (VIA v2) export -> detection records.
 *
 * Every polygon region becomes one detection whose bbox is the per-axis
 * min/max of the polygon vertices. The eye comes from a filename suffix
 * (default `_L` / `_R` before the extension); the frame id is the stem with
 * the suffix removed.
 */

import * as fs from "fs";
import * as path from "path";

import { DEFAULT_ALIASES, ObjectLabel, resolveLabel } from "./labels";
import { DetectionRecord, Eye } from "./records";

export class MissingEyeSuffixError extends Error {
  constructor(filename: string, suffixes: readonly string[]) {
    super(
      `filename ${JSON.stringify(filename)} carries no eye suffix ` +
        `(expected stem ending in ${suffixes.join(" or ")})`,
    );
    this.name = "MissingEyeSuffixError";
  }
}

export class ViaFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ViaFormatError";
  }
}

/** A region as found in the export: polygon vertices plus its label string. */
export interface RawViaRegion {
  points: Array<[number, number]>;
  rawLabel: string;
}

/** A region after label resolution. */
export interface ViaRegion {
  points: Array<[number, number]>;
  label: ObjectLabel;
}

export interface EyeNamingRule {
  leftSuffix: string;
  rightSuffix: string;
}

export const DEFAULT_EYE_RULE: EyeNamingRule = { leftSuffix: "_L", rightSuffix: "_R" };

export interface ConvertOptions {
  eyeRule?: EyeNamingRule;
  aliases?: Readonly<Record<string, ObjectLabel>>;
  /** region_attributes key holding the label; default: first of label/class/name/type, else the sole attribute */
  labelAttribute?: string;
}

const LABEL_ATTRIBUTE_CANDIDATES = ["label", "class", "name", "type", "object"];

/** Axis-aligned min/max of the polygon vertices. */
export function polygonBbox(points: ReadonlyArray<[number, number]>): [number, number, number, number] {
  if (points.length < 3) {
    throw new ViaFormatError(`polygon needs at least 3 points, got ${points.length}`);
  }
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const [x, y] of points) {
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new ViaFormatError(`non-finite polygon vertex (${x}, ${y})`);
    }
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  }
  return [minX, minY, maxX, maxY];
}

export function splitEyeSuffix(
  filename: string,
  rule: EyeNamingRule = DEFAULT_EYE_RULE,
): { frameId: string; eye: Eye } {
  const stem = path.basename(filename, path.extname(filename));
  if (stem.endsWith(rule.leftSuffix)) {
    return { frameId: stem.slice(0, -rule.leftSuffix.length), eye: "left" };
  }
  if (stem.endsWith(rule.rightSuffix)) {
    return { frameId: stem.slice(0, -rule.rightSuffix.length), eye: "right" };
  }
  throw new MissingEyeSuffixError(filename, [rule.leftSuffix, rule.rightSuffix]);
}

interface ViaRegionJson {
  shape_attributes?: {
    name?: string;
    all_points_x?: number[];
    all_points_y?: number[];
  };
  region_attributes?: Record<string, unknown>;
}

interface ViaImageJson {
  filename?: string;
  regions?: ViaRegionJson[] | Record<string, ViaRegionJson>;
}

function regionLabelString(region: ViaRegionJson, labelAttribute?: string): string {
  const attrs = region.region_attributes ?? {};
  if (labelAttribute !== undefined) {
    const value = attrs[labelAttribute];
    if (typeof value !== "string") {
      throw new ViaFormatError(`region has no string attribute ${JSON.stringify(labelAttribute)}`);
    }
    return value;
  }
  for (const key of LABEL_ATTRIBUTE_CANDIDATES) {
    if (typeof attrs[key] === "string") return attrs[key] as string;
  }
  const stringKeys = Object.keys(attrs).filter((k) => typeof attrs[k] === "string");
  if (stringKeys.length === 1) return attrs[stringKeys[0]] as string;
  throw new ViaFormatError(
    `cannot find the label attribute among ${JSON.stringify(Object.keys(attrs))}`,
  );
}

function regionPoints(region: ViaRegionJson): Array<[number, number]> {
  const shape = region.shape_attributes ?? {};
  if (shape.name !== "polygon" && shape.name !== "polyline") {
    throw new ViaFormatError(`unsupported region shape ${JSON.stringify(shape.name)}`);
  }
  const xs = shape.all_points_x ?? [];
  const ys = shape.all_points_y ?? [];
  if (xs.length !== ys.length) {
    throw new ViaFormatError(`point count mismatch: ${xs.length} xs vs ${ys.length} ys`);
  }
  return xs.map((x, i) => [x, ys[i]]);
}

/** Parse a VIA export (either the project file or the bare metadata map). */
export function parseViaExport(
  jsonText: string,
  labelAttribute?: string,
): Map<string, RawViaRegion[]> {
  let raw: unknown;
  try {
    raw = JSON.parse(jsonText);
  } catch (err) {
    throw new ViaFormatError(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof raw !== "object" || raw === null) {
    throw new ViaFormatError("top level must be an object");
  }
  const root = (raw as Record<string, unknown>)["_via_img_metadata"] ?? raw;
  const out = new Map<string, RawViaRegion[]>();
  for (const [key, value] of Object.entries(root as Record<string, ViaImageJson>)) {
    if (key.startsWith("_via_")) continue; // project-level settings blocks
    const filename = value.filename ?? key;
    const regionList = Array.isArray(value.regions)
      ? value.regions
      : Object.values(value.regions ?? {});
    out.set(
      filename,
      regionList.map((region) => ({
        points: regionPoints(region),
        rawLabel: regionLabelString(region, labelAttribute),
      })),
    );
  }
  return out;
}

/** Convert a VIA export file to detection records, in file order. */
export function viaToDetections(jsonText: string, options: ConvertOptions = {}): DetectionRecord[] {
  const eyeRule = options.eyeRule ?? DEFAULT_EYE_RULE;
  const aliases = options.aliases ?? DEFAULT_ALIASES;
  const records: DetectionRecord[] = [];
  for (const [filename, regions] of parseViaExport(jsonText, options.labelAttribute)) {
    const { frameId, eye } = splitEyeSuffix(filename, eyeRule);
    for (const region of regions) {
      records.push({
        frameId,
        eye,
        label: resolveLabel(region.rawLabel, aliases),
        bbox: polygonBbox(region.points),
        score: 1.0,
      });
    }
  }
  return records;
}

export function convertViaFile(viaPath: string, options: ConvertOptions = {}): DetectionRecord[] {
  return viaToDetections(fs.readFileSync(viaPath, "utf-8"), options);
}
