/** Wire types mirrored from the service schema (tubecat/1). */

export interface WireObject {
  j: number;
  t: number;
  k: number;
}

export interface WireSmc {
  p: number;
  objects: WireObject[];
}

export interface MutateResponse {
  schema: string;
  smc: WireSmc;
  at: number;
  dir: 'left' | 'right';
  mutated: WireObject;
}

export interface ClassifyResponse {
  schema: string;
  ok: boolean;
  smc: WireSmc;
  shift_norm: number;
  rank: number;
  segments: { a: number; l: number }[];
  x_tube: WireObject[];
  pre_smc: WireObject[][];
}

export interface GentleArrowWire {
  src: number;
  tgt: number;
  degree: number;
  kind: 'socle' | 'top' | 'cut';
  color: string;
}

export interface ExtQuiverResponse {
  schema: string;
  vertices: string[];
  arrows: [number, number, number][];
  gentle?: {
    rank: number;
    cycle: number[];
    vertices: string[];
    arrows: GentleArrowWire[];
  };
  associated_arrows?: [number, number, number][];
}

export interface ExploreResponse {
  schema: string;
  p: number;
  radius: number;
  window: number;
  vertices: [number, number, number][][];
  edges: [number, number, [number, number, number]][];
  pruned: number[];
}

export interface MutationRecord {
  at: number;
  dir: 'left' | 'right';
  before: WireSmc;
  after: WireSmc;
}

/** Canonical serialization used for replay comparisons: stable field order. */
export function serializeSmc(smc: WireSmc): string {
  const objs = smc.objects
    .map((o) => [o.k, o.j, o.t] as const)
    .sort((a, b) => a[0] - b[0] || a[1] - b[1] || a[2] - b[2])
    .map(([k, j, t]) => `${j},${t},${k}`);
  return `p=${smc.p}|${objs.join(';')}`;
}

export function formatObject(o: WireObject): string {
  let s = `S${o.j}`;
  if (o.t > 1) s += `^(${o.t})`;
  if (o.k !== 0) s += `[${o.k}]`;
  return s;
}

export function formatSmc(smc: WireSmc): string {
  return `{${smc.objects.map(formatObject).join(', ')}}`;
}
