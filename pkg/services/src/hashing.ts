/** Deterministic hashing and PRNG primitives shared by the services. */

export function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

/** xorshift32 stream seeded once; identical sequence on every platform. */
export function* xorshift32(seed: number): Generator<number> {
  let state = seed >>> 0 || 1;
  while (true) {
    state ^= state << 13;
    state >>>= 0;
    state ^= state >> 17;
    state ^= state << 5;
    state >>>= 0;
    yield state / 0xffffffff;
  }
}

export function tokenize(code: string): string[] {
  const matches = code.match(/[A-Za-z_$][A-Za-z0-9_$]*|<extra_id_0>|<UNK>/g);
  return matches ?? [];
}
