#!/usr/bin/env node
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { defaultModel, runExport, VectorKind } from "./export.js";

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .scriptName("lyricsim-export")
    .usage("$0 --corpus <records.jsonl> --out <vectors.jsonl> --kind <kind>")
    .option("corpus", { type: "string", demandOption: true,
      describe: "Line-delimited track records" })
    .option("out", { type: "string", demandOption: true,
      describe: "Vector file to write" })
    .option("kind", { choices: ["semantic", "audio", "mood"] as const,
      demandOption: true })
    .option("model", { type: "string",
      describe: "Model identifier (defaults per kind; mood copies labels)" })
    .option("batch-size", { type: "number", default: 32 })
    .strict()
    .help()
    .parse();

  const kind = args.kind as VectorKind;
  try {
    const result = await runExport({
      corpusPath: args.corpus,
      outPath: args.out,
      kind,
      model: args.model ?? defaultModel(kind),
      batchSize: args.batchSize,
    });
    console.log(
      `${result.written} ${kind} vectors -> ${args.out}` +
        (result.skipped.length ? ` (${result.skipped.length} skipped)` : ""),
    );
    return 0;
  } catch (err) {
    const error = err as Error;
    console.error(`${error.name}: ${error.message}`);
    return error.name === "ModelUnavailable" ? 3 : 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => process.exit(code));
}
