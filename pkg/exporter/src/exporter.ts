import { randomBytes } from "node:crypto";
import { readFile, rename, writeFile } from "node:fs/promises";

import type { Encoder } from "./encoder.js";
import { HashEncoder, TransformersEncoder } from "./encoder.js";
import { resolveModel } from "./models.js";
import { parsePuzzleFile, type EmbeddingFile } from "./schema.js";
import { canonicalWord } from "./words.js";

export interface ExportJob {
	datasetPath: string;
	outputPath: string;
	model: string; // family name or checkpoint id
	backend?: "transformers" | "hash";
	normalize?: boolean;
	lowercase?: boolean; // lowercase words before encoding (tokenizers are case-sensitive)
	batchSize?: number;
	hashDim?: number; // hash backend only
}

export interface ExportResult {
	modelId: string;
	dim: number;
	wordCount: number;
	outputPath: string;
}

/** Distinct canonical words across the dataset, each with the original-cased
 * text to feed the encoder (first occurrence wins). */
export function collectWords(datasetText: string): Map<string, string> {
	const file = parsePuzzleFile(JSON.parse(datasetText));
	const words = new Map<string, string>();
	for (const puzzle of file.puzzles) {
		for (const group of puzzle.groups) {
			for (const word of group.words) {
				const canon = canonicalWord(word);
				if (!words.has(canon)) words.set(canon, word.trim().split(/\s+/).join(" "));
			}
		}
	}
	return words;
}

export function makeEncoder(job: ExportJob): Encoder {
	if (job.backend === "hash") return new HashEncoder(job.hashDim ?? 64);
	return new TransformersEncoder(resolveModel(job.model).id);
}

function l2Normalize(vector: number[]): number[] {
	const norm = Math.sqrt(vector.reduce((acc, x) => acc + x * x, 0));
	return vector.map((x) => x / norm);
}

export async function runExport(job: ExportJob, encoder?: Encoder): Promise<ExportResult> {
	const datasetText = await readFile(job.datasetPath, "utf-8");
	const words = collectWords(datasetText);
	if (words.size === 0) {
		throw new Error(`dataset ${job.datasetPath} contains no words`);
	}

	const active = encoder ?? makeEncoder(job);
	const dim = await active.dim();
	const pinned = resolveModel(job.model);
	if (job.backend !== "hash" && pinned.dim && pinned.dim !== dim) {
		throw new Error(
			`model ${active.modelId} reports dim ${dim}, lock file pins ${pinned.dim}`,
		);
	}

	const canonical = [...words.keys()].sort();
	const inputs = canonical.map((canon) => {
		const original = words.get(canon)!;
		return job.lowercase ? original.toLowerCase() : original;
	});

	const batchSize = job.batchSize ?? 32;
	const vectors: Record<string, number[]> = {};
	const failures: string[] = [];
	for (let start = 0; start < inputs.length; start += batchSize) {
		const batch = inputs.slice(start, start + batchSize);
		const encoded = await active.encode(batch);
		for (let i = 0; i < batch.length; i++) {
			const canon = canonical[start + i];
			const vector = encoded[i];
			const usable =
				Array.isArray(vector) &&
				vector.length === dim &&
				vector.every(Number.isFinite) &&
				vector.some((x) => x !== 0);
			if (!usable) {
				failures.push(canon);
				continue;
			}
			vectors[canon] = job.normalize ? l2Normalize(vector) : vector;
		}
	}
	if (failures.length > 0) {
		// no silent holes: a partial vector file would corrupt downstream runs
		throw new Error(`embedding failed for: ${failures.join(", ")}`);
	}

	const doc: EmbeddingFile = { model: active.modelId, dim, vectors };
	await atomicWriteJson(job.outputPath, doc);
	return {
		modelId: active.modelId,
		dim,
		wordCount: canonical.length,
		outputPath: job.outputPath,
	};
}

async function atomicWriteJson(path: string, doc: EmbeddingFile): Promise<void> {
	const payload = JSON.stringify(doc, null, 2) + "\n";
	const temp = `${path}.tmp-${randomBytes(4).toString("hex")}`;
	await writeFile(temp, payload, "utf-8");
	await rename(temp, path);
}
