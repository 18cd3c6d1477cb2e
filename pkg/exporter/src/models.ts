import lock from "./models.lock.json" with { type: "json" };

export interface PinnedModel {
	id: string;
	dim: number;
}

const FAMILIES: Record<string, PinnedModel> = lock.families;

export function familyNames(): string[] {
	return Object.keys(FAMILIES);
}

/** Resolve a model family name (bert, roberta, mpnet, minilm) or a raw
 * checkpoint id. Families come from the pinned lock file. */
export function resolveModel(nameOrId: string): PinnedModel {
	const family = FAMILIES[nameOrId.toLowerCase()];
	if (family) return family;
	if (nameOrId.includes("/")) {
		return { id: nameOrId, dim: 0 }; // dim checked against the model config only
	}
	throw new Error(
		`unknown model ${JSON.stringify(nameOrId)}; use one of ` +
			`${familyNames().join(", ")} or a full checkpoint id`,
	);
}
