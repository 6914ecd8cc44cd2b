/** Masked-identifier prediction: ranks a fixed vocabulary by how well
 * each name fits the tokens around the `<extra_id_0>` mask. Fully
 * deterministic; ties broken alphabetically. */

import { tokenize } from "./hashing";

export const MASK = "<extra_id_0>";

interface VocabEntry {
  name: string;
  base: number;
  kind: "counter" | "accumulator" | "collection" | "text" | "value" | "function";
}

const VOCABULARY: VocabEntry[] = [
  { name: "i", base: 5, kind: "counter" },
  { name: "j", base: 4, kind: "counter" },
  { name: "k", base: 3, kind: "counter" },
  { name: "idx", base: 4, kind: "counter" },
  { name: "index", base: 4, kind: "counter" },
  { name: "n", base: 3, kind: "counter" },
  { name: "pos", base: 2, kind: "counter" },
  { name: "count", base: 4, kind: "accumulator" },
  { name: "total", base: 4, kind: "accumulator" },
  { name: "sum", base: 4, kind: "accumulator" },
  { name: "acc", base: 3, kind: "accumulator" },
  { name: "result", base: 5, kind: "value" },
  { name: "value", base: 5, kind: "value" },
  { name: "tmp", base: 3, kind: "value" },
  { name: "temp", base: 3, kind: "value" },
  { name: "val", base: 3, kind: "value" },
  { name: "out", base: 3, kind: "value" },
  { name: "res", base: 2, kind: "value" },
  { name: "items", base: 4, kind: "collection" },
  { name: "data", base: 4, kind: "collection" },
  { name: "values", base: 4, kind: "collection" },
  { name: "elements", base: 2, kind: "collection" },
  { name: "list", base: 3, kind: "collection" },
  { name: "arr", base: 3, kind: "collection" },
  { name: "xs", base: 2, kind: "collection" },
  { name: "buffer", base: 2, kind: "collection" },
  { name: "text", base: 4, kind: "text" },
  { name: "s", base: 3, kind: "text" },
  { name: "msg", base: 2, kind: "text" },
  { name: "message", base: 3, kind: "text" },
  { name: "name", base: 3, kind: "text" },
  { name: "line", base: 2, kind: "text" },
  { name: "word", base: 2, kind: "text" },
  { name: "helper", base: 2, kind: "function" },
  { name: "process", base: 3, kind: "function" },
  { name: "compute", base: 3, kind: "function" },
  { name: "calc", base: 2, kind: "function" },
  { name: "handle", base: 2, kind: "function" },
  { name: "update", base: 2, kind: "function" },
  { name: "fetch", base: 1, kind: "function" },
  { name: "build", base: 2, kind: "function" },
  { name: "run", base: 2, kind: "function" },
  { name: "main", base: 1, kind: "function" },
  { name: "x", base: 2, kind: "value" },
  { name: "y", base: 2, kind: "value" },
  { name: "z", base: 1, kind: "value" },
  { name: "a", base: 2, kind: "value" },
  { name: "b", base: 2, kind: "value" },
];

const KIND_BOOSTS: Record<string, Record<VocabEntry["kind"], number>> = {
  loop: { counter: 6, accumulator: 1, collection: 0, text: 0, value: 0, function: 0 },
  call: { counter: 0, accumulator: 0, collection: 1, text: 1, value: 1, function: 4 },
  indexed: { counter: 0, accumulator: 0, collection: 5, text: 0, value: 0, function: 0 },
  assigned: { counter: 1, accumulator: 3, collection: 1, text: 1, value: 3, function: 0 },
  stringy: { counter: 0, accumulator: 0, collection: 0, text: 5, value: 1, function: 0 },
};

function contextsAround(code: string): Set<string> {
  const contexts = new Set<string>();
  let from = 0;
  while (true) {
    const at = code.indexOf(MASK, from);
    if (at === -1) {
      break;
    }
    const before = code.slice(Math.max(0, at - 48), at);
    const after = code.slice(at + MASK.length, at + MASK.length + 48);
    const beforeTokens = tokenize(before);
    const last = beforeTokens[beforeTokens.length - 1];
    if (last === "for" || last === "while" || /for\s*\($/.test(before.trimEnd())) {
      contexts.add("loop");
    }
    if (/\brange\b|\blen\b|\.length\b/.test(before + after)) {
      contexts.add("loop");
    }
    if (after.trimStart().startsWith("(")) {
      contexts.add("call");
    }
    if (after.trimStart().startsWith("[")) {
      contexts.add("indexed");
    }
    if (/^\s*=[^=]/.test(after)) {
      contexts.add("assigned");
    }
    if (/["']/.test(before.slice(-24) + after.slice(0, 24))) {
      contexts.add("stringy");
    }
    from = at + MASK.length;
  }
  return contexts;
}

export function predictIdentifiers(codeMasked: string, k: number): string[] {
  const contexts = contextsAround(codeMasked);
  const scored = VOCABULARY.map((entry) => {
    let score = entry.base;
    for (const ctx of contexts) {
      score += KIND_BOOSTS[ctx]?.[entry.kind] ?? 0;
    }
    return { name: entry.name, score };
  });
  scored.sort((a, b) => b.score - a.score || a.name.localeCompare(b.name));
  return scored.slice(0, k).map((s) => s.name);
}

export function hasMask(code: string): boolean {
  return code.includes(MASK);
}
