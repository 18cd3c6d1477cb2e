/** Canonical form of a puzzle word: trimmed, uppercased, inner whitespace
 * collapsed. Must match the solver's canonicalization exactly, since the
 * vector file is keyed by canonical words. */
export function canonicalWord(text: string): string {
	const canon = text.trim().split(/\s+/).join(" ").toUpperCase();
	if (!canon) {
		throw new Error(`word ${JSON.stringify(text)} is empty after canonicalization`);
	}
	return canon;
}
