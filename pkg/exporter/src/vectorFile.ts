import { mkdirSync, renameSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { randomBytes } from "node:crypto";

export interface VectorRecord {
  id: string;
  vec: number[];
}

export const KIND_DIMS: Record<string, number> = {
  semantic: 384,
  audio: 200,
  mood: 2,
};

/** Write the shared vector file format atomically (temp file + rename).
 *  JSON.stringify emits shortest-round-trip decimals, so every vector
 *  reloads bit-exactly and identical inputs give byte-identical files. */
export function writeVectorFile(
  path: string,
  kind: string,
  records: VectorRecord[],
): void {
  const dim = KIND_DIMS[kind];
  if (dim === undefined) throw new Error(`unknown vector kind "${kind}"`);
  const lines = [JSON.stringify({ kind, dim })];
  for (const record of records) {
    if (record.vec.length !== dim) {
      throw new Error(
        `record ${record.id} has ${record.vec.length} entries, expected ${dim}`,
      );
    }
    lines.push(JSON.stringify({ id: record.id, vec: record.vec }));
  }
  mkdirSync(dirname(path), { recursive: true });
  const temp = join(dirname(path), `.${randomBytes(6).toString("hex")}.tmp`);
  writeFileSync(temp, lines.join("\n") + "\n", "utf-8");
  renameSync(temp, path);
}
