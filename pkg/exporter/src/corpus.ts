import { readFileSync } from "node:fs";

import { MalformedRecord } from "./errors.js";

export interface TrackRecord {
  track_id: string;
  title?: string;
  artist?: string;
  genre?: string;
  valence?: number;
  arousal?: number;
  sections: string[][];
}

/** Read the engine's line-delimited track-record format. */
export function readCorpus(path: string): TrackRecord[] {
  const records: TrackRecord[] = [];
  const lines = readFileSync(path, "utf-8").split("\n");
  lines.forEach((line, index) => {
    const trimmed = line.trim();
    if (!trimmed) return;
    let parsed: unknown;
    try {
      parsed = JSON.parse(trimmed);
    } catch (err) {
      throw new MalformedRecord(`line ${index + 1}: ${(err as Error).message}`);
    }
    const record = parsed as TrackRecord;
    if (typeof record.track_id !== "string" || !Array.isArray(record.sections)) {
      throw new MalformedRecord(
        `line ${index + 1}: track record needs track_id and sections`,
      );
    }
    records.push(record);
  });
  return records;
}

/** A section yields a lyric set only when it has a non-blank line
 *  (mirrors the engine's ingest rule, so emitted ids match exactly). */
export function sectionHasText(section: string[]): boolean {
  return section.some((line) => line.trim().length > 0);
}

/** Lyric-set id scheme shared with the engine: track id + padded index. */
export function lyricSetId(trackId: string, sectionIndex: number): string {
  return `${trackId}:${String(sectionIndex).padStart(3, "0")}`;
}

export function sectionText(section: string[]): string {
  return section.join("\n");
}
