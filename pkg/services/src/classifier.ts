/** Deterministic logistic origin scorer over a hashed token bag.
 *
 * The weights come from a fixed-seed PRNG rather than training: the
 * service's job is to be a reproducible black box behind the wire
 * contract that reacts to identifier and structure changes, so attack
 * tooling can be exercised end to end against a live endpoint. */

import { fnv1a, tokenize, xorshift32 } from "./hashing";

const BAG_BUCKETS = 64;
const WEIGHT_SEED = 0x5eed;

const WEIGHTS: number[] = (() => {
  const stream = xorshift32(WEIGHT_SEED);
  const weights: number[] = [];
  for (let i = 0; i < BAG_BUCKETS + 2; i++) {
    weights.push((stream.next().value as number) * 2 - 1);
  }
  return weights;
})();

export interface Verdict {
  prob_human: number;
  prob_llm: number;
}

export function classify(language: string, code: string): Verdict {
  const tokens = tokenize(code);
  const bag = new Array<number>(BAG_BUCKETS).fill(0);
  for (const token of tokens) {
    bag[fnv1a(token) % BAG_BUCKETS] += 1;
  }
  const total = tokens.length || 1;
  let logit = WEIGHTS[BAG_BUCKETS + 1] * 0.5;
  for (let i = 0; i < BAG_BUCKETS; i++) {
    logit += WEIGHTS[i] * (bag[i] / total) * 6;
  }
  logit += WEIGHTS[BAG_BUCKETS] * Math.min(code.length / 600, 1.5);
  const probLlm = 1 / (1 + Math.exp(-logit));
  return { prob_human: 1 - probLlm, prob_llm: probLlm };
}
