import { ModelUnavailable } from "./errors.js";

export interface Encoder {
  /** Embed a batch of input strings into fixed-dimension vectors. */
  encode(inputs: string[]): Promise<number[][]>;
}

export const SEMANTIC_DIM = 384;
export const AUDIO_DIM = 200;

/** Deterministic test encoder id: hash-projection of the input text.
 *  Not a pretrained model; exists so the export pipeline, file format and
 *  determinism contracts are testable without model downloads. */
export const TEST_MODEL = "test-hash-v1";

export const DEFAULT_SEMANTIC_MODEL = "all-MiniLM-L6-v2";
export const DEFAULT_AUDIO_MODEL = "musicnn-200";

function fnv1a32(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Sum of per-token seeded pseudo-random directions, L2-normalized.
 *  Pure integer hashing + IEEE doubles: byte-identical across runs. */
export function hashProjection(text: string, dim: number): number[] {
  const tokens = text.toLowerCase().split(/[^a-z']+/).filter(Boolean);
  if (tokens.length === 0) tokens.push("<empty>");
  const vec = new Array<number>(dim).fill(0);
  for (const token of tokens) {
    const next = mulberry32(fnv1a32(token));
    for (let d = 0; d < dim; d++) {
      vec[d] += next() * 2 - 1;
    }
  }
  const norm = Math.sqrt(vec.reduce((acc, x) => acc + x * x, 0));
  return vec.map((x) => x / norm);
}

class HashEncoder implements Encoder {
  constructor(private readonly dim: number) {}

  async encode(inputs: string[]): Promise<number[][]> {
    return inputs.map((text) => hashProjection(text, this.dim));
  }
}

type ExtractorFn = (
  texts: string[],
  opts: object,
) => Promise<{ tolist(): number[][] }>;

interface TransformersRuntime {
  pipeline(task: string, model: string): Promise<ExtractorFn>;
}

class MiniLmEncoder implements Encoder {
  private pipe: ExtractorFn | null = null;

  async encode(inputs: string[]): Promise<number[][]> {
    if (this.pipe === null) {
      let transformers: TransformersRuntime;
      try {
        // optional runtime: resolved only when the host has it installed
        transformers = (await import(
          "@xenova/transformers" as string
        )) as TransformersRuntime;
      } catch {
        throw new ModelUnavailable(
          `model "${DEFAULT_SEMANTIC_MODEL}" needs the transformers.js ` +
            "runtime: npm install @xenova/transformers",
        );
      }
      this.pipe = await transformers.pipeline(
        "feature-extraction",
        `Xenova/${DEFAULT_SEMANTIC_MODEL}`,
      );
    }
    const output = await this.pipe(inputs, { pooling: "mean", normalize: true });
    return output.tolist();
  }
}

export function semanticEncoder(model: string): Encoder {
  if (model === TEST_MODEL) return new HashEncoder(SEMANTIC_DIM);
  if (model === DEFAULT_SEMANTIC_MODEL) return new MiniLmEncoder();
  throw new ModelUnavailable(`unknown semantic model "${model}"`);
}

export function audioEncoder(model: string): Encoder {
  if (model === TEST_MODEL) return new HashEncoder(AUDIO_DIM);
  if (model === DEFAULT_AUDIO_MODEL) {
    throw new ModelUnavailable(
      `model "${DEFAULT_AUDIO_MODEL}" needs an audio tagging runtime with ` +
        "decoded track previews; none is bundled",
    );
  }
  throw new ModelUnavailable(`unknown audio model "${model}"`);
}
