/** Character-trigram hashing embedder: deterministic, fixed dimension,
 * L2-normalized. Lexically similar tokens land close in cosine. */

import { fnv1a } from "./hashing";

export const EMBED_DIMENSION = 128;

export function embed(token: string): number[] {
  const padded = `^${token}$`;
  const vector = new Array<number>(EMBED_DIMENSION).fill(0);
  for (let i = 0; i + 3 <= padded.length; i++) {
    const tri = padded.slice(i, i + 3);
    vector[fnv1a(tri) % EMBED_DIMENSION] += 1;
  }
  const norm = Math.sqrt(vector.reduce((acc, x) => acc + x * x, 0));
  if (norm === 0) {
    return vector;
  }
  return vector.map((x) => x / norm);
}
