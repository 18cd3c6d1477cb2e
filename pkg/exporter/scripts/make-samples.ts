/** Regenerate the committed sample vector files in testdata/ from the
 * toolkit's bundled fixture dataset, using the deterministic hash backend
 * (raw and normalized variants). The solver's cross-package contract test
 * consumes these files. Run via `npm run make-samples`. */

import { mkdir } from "node:fs/promises";
import { fileURLToPath } from "node:url";

import { runExport } from "../src/exporter.js";

// compiled location: exporter/dist/scripts/make-samples.js
const exporterRoot = new URL("../../", import.meta.url);
const repoRoot = new URL("../", exporterRoot);
const dataset = fileURLToPath(
	new URL("src/connections_toolkit/data/fixtures.json", repoRoot),
);
const outDir = fileURLToPath(new URL("testdata/", exporterRoot));

async function main(): Promise<void> {
	await mkdir(outDir, { recursive: true });
	for (const [name, normalize] of [
		["embeddings-sample.json", false],
		["embeddings-sample-normalized.json", true],
	] as const) {
		const result = await runExport({
			datasetPath: dataset,
			outputPath: `${outDir}${name}`,
			model: "mpnet",
			backend: "hash",
			normalize,
			hashDim: 64,
		});
		console.log(`wrote ${result.outputPath} (${result.wordCount} words, dim ${result.dim})`);
	}
}

main().catch((error) => {
	console.error(error);
	process.exitCode = 1;
});
