/**
 * Color-threshold stand-in detector: per-label RGB ranges -> connected
 * components of in-range pixels -> tight bounding boxes.
 *
 * Components are 4-connected and must reach a minimum pixel area. Boxes use
 * the continuous pixel convention (x2/y2 exclusive), so a square covering
 * pixel columns 10..39 gets x1=10, x2=40. Output is ordered by x1, then y1,
 * then label, which makes record files reproducible.
 */

import * as fs from "fs";
import { PNG } from "pngjs";

import { ObjectLabel, OBJECT_LABELS } from "./labels";
import { DetectionRecord, Eye } from "./records";

export class UnreadableImageError extends Error {
  constructor(path: string, cause: string) {
    super(`cannot read image ${JSON.stringify(path)}: ${cause}`);
    this.name = "UnreadableImageError";
  }
}

export interface ChannelRange {
  r: [number, number];
  g: [number, number];
  b: [number, number];
}

export type ColorRanges = Partial<Record<ObjectLabel, ChannelRange>>;

export interface ThresholdOptions {
  minAreaPx?: number;
}

export const DEFAULT_MIN_AREA_PX = 20;

export interface Rgba {
  width: number;
  height: number;
  /** RGBA bytes, row-major. */
  data: Uint8Array;
}

export function readPng(path: string): Rgba {
  let bytes: Buffer;
  try {
    bytes = fs.readFileSync(path);
  } catch (err) {
    throw new UnreadableImageError(path, (err as Error).message);
  }
  try {
    const png = PNG.sync.read(bytes);
    return { width: png.width, height: png.height, data: png.data };
  } catch (err) {
    throw new UnreadableImageError(path, (err as Error).message);
  }
}

function inRange(value: number, range: [number, number]): boolean {
  return range[0] <= value && value <= range[1];
}

/** Tight boxes of 4-connected in-range components, ordered by x1/y1/label. */
export function thresholdImage(
  image: Rgba,
  colors: ColorRanges,
  options: ThresholdOptions = {},
): Array<{ label: ObjectLabel; bbox: [number, number, number, number] }> {
  const minArea = options.minAreaPx ?? DEFAULT_MIN_AREA_PX;
  const { width, height, data } = image;
  const out: Array<{ label: ObjectLabel; bbox: [number, number, number, number] }> = [];

  for (const label of OBJECT_LABELS) {
    const range = colors[label];
    if (!range) continue;
    const mask = new Uint8Array(width * height);
    for (let i = 0, px = 0; px < width * height; px++, i += 4) {
      if (
        inRange(data[i], range.r) &&
        inRange(data[i + 1], range.g) &&
        inRange(data[i + 2], range.b)
      ) {
        mask[px] = 1;
      }
    }
    const seen = new Uint8Array(width * height);
    const stack: number[] = [];
    for (let start = 0; start < mask.length; start++) {
      if (!mask[start] || seen[start]) continue;
      let area = 0;
      let minX = width, minY = height, maxX = -1, maxY = -1;
      stack.push(start);
      seen[start] = 1;
      while (stack.length) {
        const px = stack.pop()!;
        const x = px % width;
        const y = (px - x) / width;
        area++;
        if (x < minX) minX = x;
        if (x > maxX) maxX = x;
        if (y < minY) minY = y;
        if (y > maxY) maxY = y;
        if (x > 0 && mask[px - 1] && !seen[px - 1]) { seen[px - 1] = 1; stack.push(px - 1); }
        if (x + 1 < width && mask[px + 1] && !seen[px + 1]) { seen[px + 1] = 1; stack.push(px + 1); }
        if (y > 0 && mask[px - width] && !seen[px - width]) { seen[px - width] = 1; stack.push(px - width); }
        if (y + 1 < height && mask[px + width] && !seen[px + width]) { seen[px + width] = 1; stack.push(px + width); }
      }
      if (area >= minArea) {
        out.push({ label, bbox: [minX, minY, maxX + 1, maxY + 1] });
      }
    }
  }
  out.sort((a, b) =>
    a.bbox[0] - b.bbox[0] || a.bbox[1] - b.bbox[1] || a.label.localeCompare(b.label));
  return out;
}

/** Run the detector over a left/right image pair. */
export function thresholdDetect(
  leftPath: string,
  rightPath: string,
  colors: ColorRanges,
  frameId: string,
  options: ThresholdOptions = {},
): DetectionRecord[] {
  const records: DetectionRecord[] = [];
  const pairs: Array<[Eye, string]> = [["left", leftPath], ["right", rightPath]];
  for (const [eye, imagePath] of pairs) {
    for (const { label, bbox } of thresholdImage(readPng(imagePath), colors, options)) {
      records.push({ frameId, eye, label, bbox, score: 1.0 });
    }
  }
  return records;
}

/** Parse a color-ranges config file: {"red_block": {"r": [200,255], ...}, ...} */
export function parseColorRanges(jsonText: string): ColorRanges {
  const raw = JSON.parse(jsonText) as Record<string, unknown>;
  const out: ColorRanges = {};
  for (const [key, value] of Object.entries(raw)) {
    if (!(OBJECT_LABELS as readonly string[]).includes(key)) {
      throw new Error(`unknown label ${JSON.stringify(key)} in color config`);
    }
    const entry = value as Record<string, unknown>;
    const parsed: Partial<ChannelRange> = {};
    for (const channel of ["r", "g", "b"] as const) {
      const range = entry[channel];
      if (!Array.isArray(range) || range.length !== 2 ||
          typeof range[0] !== "number" || typeof range[1] !== "number") {
        throw new Error(`label ${key}: channel ${channel} needs a [lo, hi] pair`);
      }
      parsed[channel] = [range[0], range[1]];
    }
    out[key as ObjectLabel] = parsed as ChannelRange;
  }
  return out;
}
