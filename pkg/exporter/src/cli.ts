#!/usr/bin/env node
/** CLI for the embedding exporter.
 *
 *   connections-export --dataset puzzles.json --model mpnet --out vecs.json
 *
 * Exit codes: 0 success, 1 runtime failure, 2 bad usage.
 */

import { familyNames } from "./models.js";
import { runExport, type ExportJob } from "./exporter.js";

const USAGE = `usage: connections-export --dataset <puzzles.json> --model <name> --out <vectors.json>

options:
  --dataset <path>     puzzle dataset in the toolkit's JSON schema (required)
  --model <name>       model family (${familyNames().join(", ")}) or checkpoint id (required)
  --out <path>         output vector file (required)
  --backend <name>     transformers (default) or hash (offline deterministic test encoder)
  --normalize          L2-normalize every vector
  --lowercase          lowercase words before encoding
  --batch-size <n>     encoder batch size (default 32)
  --hash-dim <n>       vector width for the hash backend (default 64)
  --help               show this message
`;

class UsageError extends Error {}

export function parseArgs(argv: string[]): ExportJob | "help" {
	const job: Partial<ExportJob> = { backend: "transformers" };
	for (let i = 0; i < argv.length; i++) {
		const flag = argv[i];
		const next = () => {
			const value = argv[++i];
			if (value === undefined) throw new UsageError(`${flag} needs a value`);
			return value;
		};
		switch (flag) {
			case "--dataset":
				job.datasetPath = next();
				break;
			case "--model":
				job.model = next();
				break;
			case "--out":
				job.outputPath = next();
				break;
			case "--backend": {
				const backend = next();
				if (backend !== "transformers" && backend !== "hash") {
					throw new UsageError(`unknown backend ${backend}`);
				}
				job.backend = backend;
				break;
			}
			case "--normalize":
				job.normalize = true;
				break;
			case "--lowercase":
				job.lowercase = true;
				break;
			case "--batch-size":
				job.batchSize = Number(next());
				break;
			case "--hash-dim":
				job.hashDim = Number(next());
				break;
			case "--help":
				return "help";
			default:
				throw new UsageError(`unknown flag ${flag}`);
		}
	}
	for (const required of ["datasetPath", "model", "outputPath"] as const) {
		if (!job[required]) throw new UsageError(`missing required flag for ${required}`);
	}
	if (job.batchSize !== undefined && (!Number.isInteger(job.batchSize) || job.batchSize < 1)) {
		throw new UsageError("--batch-size must be a positive integer");
	}
	return job as ExportJob;
}

export async function main(argv: string[]): Promise<number> {
	let job: ExportJob | "help";
	try {
		job = parseArgs(argv);
	} catch (error) {
		console.error(`error: ${(error as Error).message}\n`);
		console.error(USAGE);
		return 2;
	}
	if (job === "help") {
		console.log(USAGE);
		return 0;
	}
	try {
		const result = await runExport(job);
		console.log(
			JSON.stringify(
				{
					model: result.modelId,
					dim: result.dim,
					words: result.wordCount,
					out: result.outputPath,
				},
				null,
				2,
			),
		);
		return 0;
	} catch (error) {
		console.error(`error: ${(error as Error).message}`);
		return 1;
	}
}

const invokedDirectly =
	process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
	main(process.argv.slice(2)).then((code) => {
		process.exitCode = code;
	});
}
