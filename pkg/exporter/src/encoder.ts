/** Encoder backends.
 *
 * TransformersEncoder runs a pinned sentence-encoder checkpoint through
 * transformers.js (mean pooling) and reports the embedding width straight
 * from the model's own config. HashEncoder is a deterministic offline
 * stand-in used by tests and the committed sample fixtures: same word, same
 * vector, on every machine, with no model download.
 */

export interface Encoder {
	readonly modelId: string;
	dim(): Promise<number>;
	encode(words: string[]): Promise<number[][]>;
}

// FNV-1a, then an xorshift-style scramble per component; all 32-bit integer
// ops, so results are identical across platforms.
function fnv1a(text: string): number {
	let hash = 0x811c9dc5;
	for (let i = 0; i < text.length; i++) {
		hash ^= text.charCodeAt(i);
		hash = Math.imul(hash, 0x01000193);
	}
	return hash >>> 0;
}

function scramble(state: number): number {
	state ^= state << 13;
	state >>>= 0;
	state ^= state >>> 17;
	state = Math.imul(state, 0x5bd1e995) >>> 0;
	state ^= state >>> 15;
	return state >>> 0;
}

export class HashEncoder implements Encoder {
	readonly modelId: string;
	private readonly width: number;

	constructor(width = 64) {
		if (width <= 0) throw new Error(`hash encoder width must be positive, got ${width}`);
		this.width = width;
		this.modelId = `hash-${width}`;
	}

	async dim(): Promise<number> {
		return this.width;
	}

	async encode(words: string[]): Promise<number[][]> {
		return words.map((word) => {
			const seed = fnv1a(word);
			const vector = new Array<number>(this.width);
			let state = seed || 1;
			for (let j = 0; j < this.width; j++) {
				state = scramble(state + 0x9e3779b9 + j);
				vector[j] = state / 0xffffffff - 0.5;
			}
			return vector;
		});
	}
}

interface FeatureExtractor {
	(texts: string[], options: { pooling: string; normalize: boolean }): Promise<{
		tolist(): number[][];
	}>;
	model: { config: { hidden_size?: number; d_model?: number } };
}

export class TransformersEncoder implements Encoder {
	readonly modelId: string;
	private extractor: FeatureExtractor | null = null;

	constructor(modelId: string) {
		this.modelId = modelId;
	}

	private async load(): Promise<FeatureExtractor> {
		if (this.extractor) return this.extractor;
		let pipeline;
		try {
			({ pipeline } = await import("@huggingface/transformers"));
		} catch {
			throw new Error(
				"the transformers backend needs the optional dependency " +
					"@huggingface/transformers (npm install @huggingface/transformers); " +
					"use --backend hash for an offline deterministic export",
			);
		}
		this.extractor = (await pipeline("feature-extraction", this.modelId, {
			dtype: "fp32",
		})) as unknown as FeatureExtractor;
		return this.extractor;
	}

	/** Embedding width as stated by the checkpoint's own config. */
	async dim(): Promise<number> {
		const extractor = await this.load();
		const config = extractor.model.config;
		const width = config.hidden_size ?? config.d_model;
		if (!width) {
			throw new Error(`model ${this.modelId} config does not state a hidden size`);
		}
		return width;
	}

	async encode(words: string[]): Promise<number[][]> {
		const extractor = await this.load();
		const output = await extractor(words, { pooling: "mean", normalize: false });
		return output.tolist();
	}
}
