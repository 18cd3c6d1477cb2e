import { describe, expect, it } from "vitest";

import { canonicalWord } from "../src/words.js";

describe("canonicalWord", () => {
	it("uppercases and trims", () => {
		expect(canonicalWord("  bass ")).toBe("BASS");
	});

	it("collapses inner whitespace", () => {
		expect(canonicalWord("new   york")).toBe("NEW YORK");
	});

	it("is idempotent", () => {
		for (const raw of ["bass", "  Fire  Opal ", "MiXeD"]) {
			const once = canonicalWord(raw);
			expect(canonicalWord(once)).toBe(once);
		}
	});

	it("rejects empty words", () => {
		expect(() => canonicalWord("   ")).toThrow(/empty/);
	});
});
