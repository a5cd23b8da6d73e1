/**
 * Canonical object labels of the detection pipeline, plus normalization of
 * the free-form label strings found in annotation exports.
 */

export type ObjectLabel = "left_grasper" | "right_grasper" | "red_block" | "green_block";

export const OBJECT_LABELS: readonly ObjectLabel[] = [
  "left_grasper",
  "right_grasper",
  "red_block",
  "green_block",
];

export class UnknownLabelError extends Error {
  constructor(
    public readonly raw: string,
    public readonly suggestion: string | undefined,
  ) {
    super(
      `unknown label ${JSON.stringify(raw)}` +
        (suggestion ? ` (did you mean ${JSON.stringify(suggestion)}?)` : ""),
    );
    this.name = "UnknownLabelError";
  }
}

/** Lowercase, trim, and collapse any run of spaces/underscores/hyphens. */
export function normalizeLabelToken(raw: string): string {
  return raw.trim().toLowerCase().replace(/[\s_-]+/g, "_");
}

/** Extra normalized spellings accepted out of the box. */
export const DEFAULT_ALIASES: Readonly<Record<string, ObjectLabel>> = {
  left_grasper: "left_grasper",
  right_grasper: "right_grasper",
  red_block: "red_block",
  green_block: "green_block",
  leftgrasper: "left_grasper",
  rightgrasper: "right_grasper",
  redblock: "red_block",
  greenblock: "green_block",
};

function editDistance(a: string, b: string): number {
  const rows = a.length + 1;
  const cols = b.length + 1;
  const d = new Array<number>(rows * cols);
  for (let i = 0; i < rows; i++) d[i * cols] = i;
  for (let j = 0; j < cols; j++) d[j] = j;
  for (let i = 1; i < rows; i++) {
    for (let j = 1; j < cols; j++) {
      const sub = a[i - 1] === b[j - 1] ? 0 : 1;
      d[i * cols + j] = Math.min(
        d[(i - 1) * cols + j] + 1,
        d[i * cols + j - 1] + 1,
        d[(i - 1) * cols + j - 1] + sub,
      );
    }
  }
  return d[rows * cols - 1];
}

/**
 * Map a raw annotation label to a canonical one via the alias table.
 * Unknown labels fail with the closest known spelling as a suggestion.
 */
export function resolveLabel(
  raw: string,
  aliases: Readonly<Record<string, ObjectLabel>> = DEFAULT_ALIASES,
): ObjectLabel {
  const token = normalizeLabelToken(raw);
  const hit = aliases[token];
  if (hit !== undefined) return hit;
  let best: string | undefined;
  let bestDist = Infinity;
  for (const known of Object.keys(aliases)) {
    const dist = editDistance(token, known);
    if (dist < bestDist) {
      bestDist = dist;
      best = known;
    }
  }
  throw new UnknownLabelError(raw, bestDist <= 6 ? best : undefined);
}
