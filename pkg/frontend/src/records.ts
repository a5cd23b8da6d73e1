/**
 * The detection record wire format consumed by the camsteer pipeline:
 * one record per line, UTF-8, comma-separated, fixed field order
 *
 *   frame_id,eye,label,x1,y1,x2,y2,score
 *
 * with eye left|right and (x1,y1,x2,y2) the upper-left and lower-right bbox
 * corners in pixels (0 <= x1 < x2, 0 <= y1 < y2, sub-pixel allowed).
 */

import { ObjectLabel } from "./labels";

export type Eye = "left" | "right";

export interface DetectionRecord {
  frameId: string;
  eye: Eye;
  label: ObjectLabel;
  bbox: [number, number, number, number];
  score: number;
}

export function validateBbox(bbox: [number, number, number, number]): void {
  const [x1, y1, x2, y2] = bbox;
  if (!(x1 >= 0 && x1 < x2 && y1 >= 0 && y1 < y2)) {
    throw new Error(`invalid bbox [${bbox.join(", ")}]: need 0 <= min < max per axis`);
  }
}

export function formatDetectionLine(det: DetectionRecord): string {
  validateBbox(det.bbox);
  const [x1, y1, x2, y2] = det.bbox;
  return `${det.frameId},${det.eye},${det.label},${x1},${y1},${x2},${y2},${det.score}`;
}

/** Serialize records to file content (one line each, trailing newline). */
export function formatDetectionFile(dets: readonly DetectionRecord[]): string {
  return dets.map(formatDetectionLine).join("\n") + (dets.length ? "\n" : "");
}
