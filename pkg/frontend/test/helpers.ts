import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

export const FIXTURES = fileURLToPath(new URL("../fixtures", import.meta.url));

const created: string[] = [];

export function makeTmpDir(): string {
  const dir = mkdtempSync(join(tmpdir(), "interset-plots-"));
  created.push(dir);
  return dir;
}

export function cleanupTmpDirs(): void {
  while (created.length > 0) {
    rmSync(created.pop()!, { recursive: true, force: true });
  }
}

export function writeCsv(dir: string, name: string, lines: string[]): string {
  const path = join(dir, name);
  writeFileSync(path, lines.join("\n") + "\n", "utf-8");
  return path;
}

/** A well-formed 20-bin histogram CSV over [0, 1] with the given counts. */
export function histLines(counts: number[]): string[] {
  const lines = ["bin_low,bin_high,count"];
  for (const [i, count] of counts.entries()) {
    lines.push(`${(i * 0.05).toFixed(2)},${((i + 1) * 0.05).toFixed(2)},${count}`);
  }
  return lines;
}
