#!/usr/bin/env node
/**
 * annotation-adapter: feed the camsteer detection pipeline from the vision
 * ecosystem.
 *
 *   annotation-adapter convert --via export.json --out detections.csv
 *   annotation-adapter detect --left f001_L.png --right f001_R.png \
 *                             --colors colors.json --out detections.csv
 */

import * as fs from "fs";
import * as path from "path";

import { formatDetectionFile } from "./records";
import { parseColorRanges, thresholdDetect } from "./threshold";
import { convertViaFile, DEFAULT_EYE_RULE, splitEyeSuffix } from "./via";

function parseFlags(argv: string[], allowed: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || !allowed.includes(key.slice(2))) {
      throw new Error(`unknown or misplaced argument ${JSON.stringify(key)}`);
    }
    if (i + 1 >= argv.length) {
      throw new Error(`flag ${key} needs a value`);
    }
    flags.set(key.slice(2), argv[i + 1]);
  }
  return flags;
}

function requireFlag(flags: Map<string, string>, name: string): string {
  const value = flags.get(name);
  if (value === undefined) throw new Error(`--${name} is required`);
  return value;
}

function writeOut(outPath: string | undefined, content: string): void {
  if (outPath === undefined) {
    process.stdout.write(content);
  } else {
    fs.writeFileSync(outPath, content, "utf-8");
  }
}

function runConvert(argv: string[]): void {
  const flags = parseFlags(argv, ["via", "out", "left-suffix", "right-suffix"]);
  const eyeRule = {
    leftSuffix: flags.get("left-suffix") ?? DEFAULT_EYE_RULE.leftSuffix,
    rightSuffix: flags.get("right-suffix") ?? DEFAULT_EYE_RULE.rightSuffix,
  };
  const records = convertViaFile(requireFlag(flags, "via"), { eyeRule });
  writeOut(flags.get("out"), formatDetectionFile(records));
}

function runDetect(argv: string[]): void {
  const flags = parseFlags(argv, ["left", "right", "colors", "out", "frame", "min-area"]);
  const leftPath = requireFlag(flags, "left");
  const colors = parseColorRanges(fs.readFileSync(requireFlag(flags, "colors"), "utf-8"));
  let frameId = flags.get("frame");
  if (frameId === undefined) {
    // prefer the eye-suffix rule; otherwise the left image's stem names the frame
    try {
      frameId = splitEyeSuffix(leftPath).frameId;
    } catch {
      frameId = path.basename(leftPath, path.extname(leftPath));
    }
  }
  const minArea = flags.get("min-area");
  const records = thresholdDetect(
    leftPath,
    requireFlag(flags, "right"),
    colors,
    frameId,
    minArea === undefined ? {} : { minAreaPx: Number(minArea) },
  );
  writeOut(flags.get("out"), formatDetectionFile(records));
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    if (command === "convert") {
      runConvert(rest);
    } else if (command === "detect") {
      runDetect(rest);
    } else {
      process.stderr.write(
        "usage: annotation-adapter convert --via <file> [--out <file>]\n" +
        "       annotation-adapter detect --left <img> --right <img> " +
        "--colors <config> [--out <file>]\n",
      );
      return 2;
    }
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).name}: ${(err as Error).message}\n`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
