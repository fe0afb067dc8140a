import { writeFileSync } from "node:fs";

import {
  lyricSetId,
  readCorpus,
  sectionHasText,
  sectionText,
  TrackRecord,
} from "./corpus.js";
import {
  audioEncoder,
  DEFAULT_AUDIO_MODEL,
  DEFAULT_SEMANTIC_MODEL,
  Encoder,
  TEST_MODEL,
} from "./encoders.js";
import { semanticEncoder } from "./encoders.js";
import { IdMismatch } from "./errors.js";
import { VectorRecord, writeVectorFile } from "./vectorFile.js";

export type VectorKind = "semantic" | "audio" | "mood";

export interface ExportJob {
  corpusPath: string;
  outPath: string;
  kind: VectorKind;
  model: string;
  batchSize: number;
}

export interface ExportResult {
  written: number;
  skipped: string[];
}

export function defaultModel(kind: VectorKind): string {
  if (kind === "semantic") return DEFAULT_SEMANTIC_MODEL;
  if (kind === "audio") return DEFAULT_AUDIO_MODEL;
  return "labels";
}

export async function encodeBatched(
  encoder: Encoder,
  ids: string[],
  inputs: string[],
  batchSize: number,
): Promise<VectorRecord[]> {
  const records: VectorRecord[] = [];
  for (let start = 0; start < inputs.length; start += batchSize) {
    const batchIds = ids.slice(start, start + batchSize);
    const vectors = await encoder.encode(inputs.slice(start, start + batchSize));
    if (vectors.length !== batchIds.length) {
      throw new IdMismatch(
        `encoder returned ${vectors.length} vectors for ${batchIds.length} ids`,
      );
    }
    batchIds.forEach((id, i) => records.push({ id, vec: vectors[i] }));
  }
  return records;
}

function semanticInputs(tracks: TrackRecord[]): { ids: string[]; texts: string[] } {
  const ids: string[] = [];
  const texts: string[] = [];
  for (const track of tracks) {
    track.sections.forEach((section, index) => {
      if (!sectionHasText(section)) return;
      ids.push(lyricSetId(track.track_id, index));
      texts.push(sectionText(section));
    });
  }
  return { ids, texts };
}

/** Run one export job; returns counts and writes a sidecar skip log. */
export async function runExport(job: ExportJob): Promise<ExportResult> {
  const tracks = readCorpus(job.corpusPath);
  let records: VectorRecord[] = [];
  const skipped: string[] = [];

  if (job.kind === "semantic") {
    const { ids, texts } = semanticInputs(tracks);
    records = await encodeBatched(semanticEncoder(job.model), ids, texts,
      job.batchSize);
  } else if (job.kind === "audio") {
    const encoder = audioEncoder(job.model);
    const ids = tracks.map((t) => t.track_id);
    // the test encoder consumes track metadata; a real tagger would decode
    // the preview audio here instead
    const inputs = tracks.map(
      (t) => `${t.track_id}\n${t.title ?? ""}\n${t.artist ?? ""}\n${t.genre ?? ""}`,
    );
    records = await encodeBatched(encoder, ids, inputs, job.batchSize);
  } else {
    for (const track of tracks) {
      if (typeof track.valence === "number" && typeof track.arousal === "number") {
        records.push({ id: track.track_id, vec: [track.valence, track.arousal] });
      } else {
        skipped.push(`${track.track_id}: no mood labels`);
      }
    }
  }

  writeVectorFile(job.outPath, job.kind, records);
  writeFileSync(`${job.outPath}.skips.log`,
    skipped.map((line) => line + "\n").join(""), "utf-8");
  return { written: records.length, skipped };
}

export { TEST_MODEL };
