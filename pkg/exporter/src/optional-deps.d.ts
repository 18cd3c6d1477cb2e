// Optional runtime dependency: installed only when the real encoder is used.
declare module "@huggingface/transformers" {
	export function pipeline(
		task: string,
		model: string,
		options?: Record<string, unknown>,
	): Promise<unknown>;
}
