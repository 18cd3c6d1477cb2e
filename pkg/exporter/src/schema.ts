import { canonicalWord } from "./words.js";

export interface PuzzleGroup {
	name: string;
	color: string;
	words: string[];
}

export interface PuzzleRecord {
	id: string;
	date?: string;
	groups: PuzzleGroup[];
}

export interface PuzzleFile {
	version: number;
	puzzles: PuzzleRecord[];
}

export interface EmbeddingFile {
	model: string;
	dim: number;
	vectors: Record<string, number[]>;
}

function fail(message: string): never {
	throw new Error(message);
}

/** Parse and validate a puzzle dataset document (the solver's file schema). */
export function parsePuzzleFile(doc: unknown): PuzzleFile {
	if (typeof doc !== "object" || doc === null) fail("top level must be an object");
	const obj = doc as Record<string, unknown>;
	if (obj.version !== 1) fail(`expected version 1, got ${JSON.stringify(obj.version)}`);
	if (!Array.isArray(obj.puzzles)) fail("'puzzles' must be a list");
	const puzzles = obj.puzzles.map((record, index) => parseRecord(record, index));
	const seen = new Set<string>();
	for (const puzzle of puzzles) {
		if (seen.has(puzzle.id)) fail(`duplicate puzzle id ${puzzle.id}`);
		seen.add(puzzle.id);
	}
	return { version: 1, puzzles };
}

function parseRecord(record: unknown, index: number): PuzzleRecord {
	if (typeof record !== "object" || record === null) {
		fail(`puzzle record ${index} is not an object`);
	}
	const obj = record as Record<string, unknown>;
	if (typeof obj.id !== "string" || !obj.id) {
		fail(`puzzle record ${index} needs a non-empty id`);
	}
	if (!Array.isArray(obj.groups) || obj.groups.length !== 4) {
		fail(`puzzle ${obj.id}: needs exactly 4 groups`);
	}
	const groups = obj.groups.map((group) => {
		const g = group as Record<string, unknown>;
		if (!Array.isArray(g.words) || g.words.some((w) => typeof w !== "string")) {
			fail(`puzzle ${obj.id}: group words must be strings`);
		}
		if (g.words.length !== 4) fail(`puzzle ${obj.id}: groups need 4 words`);
		return {
			name: String(g.name ?? ""),
			color: String(g.color ?? ""),
			words: g.words as string[],
		};
	});
	const canon = groups.flatMap((g) => g.words.map(canonicalWord));
	if (new Set(canon).size !== 16) {
		fail(`puzzle ${obj.id}: must contain 16 distinct words`);
	}
	const date = typeof obj.date === "string" ? obj.date : undefined;
	return { id: obj.id, date, groups };
}

/** Validate an embedding document against the shared vector file schema. */
export function validateEmbeddingFile(doc: unknown): EmbeddingFile {
	if (typeof doc !== "object" || doc === null) fail("top level must be an object");
	const obj = doc as Record<string, unknown>;
	if (typeof obj.model !== "string" || !obj.model) fail("missing 'model'");
	if (typeof obj.dim !== "number" || !Number.isInteger(obj.dim) || obj.dim <= 0) {
		fail(`'dim' must be a positive integer, got ${JSON.stringify(obj.dim)}`);
	}
	if (typeof obj.vectors !== "object" || obj.vectors === null) {
		fail("missing 'vectors'");
	}
	const vectors = obj.vectors as Record<string, unknown>;
	const out: Record<string, number[]> = {};
	for (const [word, vector] of Object.entries(vectors)) {
		const canon = canonicalWord(word);
		if (canon !== word) fail(`vector key ${JSON.stringify(word)} is not canonical`);
		if (!Array.isArray(vector) || vector.length !== obj.dim) {
			fail(`vector for ${word} must have length ${obj.dim}`);
		}
		let normSq = 0;
		for (const component of vector) {
			if (typeof component !== "number" || !Number.isFinite(component)) {
				fail(`vector for ${word} has a non-finite component`);
			}
			normSq += component * component;
		}
		if (normSq === 0) fail(`vector for ${word} has zero norm`);
		out[word] = vector as number[];
	}
	return { model: obj.model, dim: obj.dim, vectors: out };
}
