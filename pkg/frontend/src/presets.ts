/** Bundled starting points: one per heart class at rank 3 (sample
 * parameters), the rank-2 standard collection, and the rank-7 example. */

import type { WireSmc } from './types.js';

function smc(p: number, triples: [number, number, number][]): WireSmc {
  return { p, objects: triples.map(([j, t, k]) => ({ j, t, k })) };
}

export interface Preset {
  name: string;
  smc: WireSmc;
}

export const PRESETS: Preset[] = [
  { name: 'rank 2: standard simples', smc: smc(2, [[0, 1, 0], [1, 1, 0]]) },
  { name: 'rank 3: standard simples', smc: smc(3, [[0, 1, 0], [1, 1, 0], [2, 1, 0]]) },
  { name: 'rank 3: two-tile heart, exchanged simple', smc: smc(3, [[2, 2, 0], [0, 1, 0], [1, 1, 1]]) },
  { name: 'rank 3: two-tile heart, hanging top', smc: smc(3, [[2, 2, 0], [0, 1, 0], [2, 1, -1]]) },
  { name: 'rank 3: wrapping heart, nested pair up', smc: smc(3, [[2, 3, 0], [1, 2, 1], [1, 1, 0]]) },
  { name: 'rank 3: wrapping heart, mixed pair', smc: smc(3, [[2, 3, 0], [2, 1, -1], [1, 1, -1]]) },
  { name: 'rank 3: wrapping heart, both exchanged', smc: smc(3, [[2, 3, 0], [0, 1, 1], [1, 1, 1]]) },
  { name: 'rank 3: wrapping heart, one below', smc: smc(3, [[2, 3, 0], [2, 2, -1], [1, 1, 0]]) },
  { name: 'rank 3: wrapping heart, spread pair', smc: smc(3, [[2, 3, 0], [0, 1, 2], [1, 2, 1]]) },
  { name: 'rank 3: wrapping heart, split pair', smc: smc(3, [[2, 3, 0], [0, 1, 1], [2, 1, -1]]) },
  { name: 'rank 3: wrapping heart, top chain', smc: smc(3, [[2, 3, 0], [2, 2, -1], [2, 1, -2]]) },
  {
    name: 'rank 7: three-tile heart',
    smc: smc(7, [[1, 2, 0], [5, 4, 0], [6, 1, 0], [0, 1, 1], [3, 1, -1], [4, 1, -1], [5, 1, -1]]),
  },
];
