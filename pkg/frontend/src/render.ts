/** SVG rendering: pure string builders so tests can run without a DOM.
 *
 * Layout mirrors the gentle structure: cycle vertices on a circle, tree
 * vertices fanned outward along their chains.  Layout is cosmetic only.
 */

import type { ExploreResponse, ExtQuiverResponse } from './types.js';
import { serializeSmc, type WireSmc } from './types.js';

const W = 520;
const H = 420;
const CX = W / 2;
const CY = H / 2;

interface Point {
  x: number;
  y: number;
}

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function arrowPath(a: Point, b: Point, bend: number): string {
  const mx = (a.x + b.x) / 2 - bend * (b.y - a.y) * 0.25;
  const my = (a.y + b.y) / 2 + bend * (b.x - a.x) * 0.25;
  return `M ${a.x.toFixed(1)} ${a.y.toFixed(1)} Q ${mx.toFixed(1)} ${my.toFixed(1)} ${b.x.toFixed(1)} ${b.y.toFixed(1)}`;
}

function loopPath(p: Point): string {
  return `M ${p.x} ${p.y - 10} C ${p.x + 45} ${p.y - 50}, ${p.x - 45} ${p.y - 50}, ${p.x} ${p.y - 10}`;
}

const DASH: Record<string, string> = {
  straight: '',
  curly: '6,3',
  dotted: '2,3',
  loop: '',
};

/** Positions: cycle on a circle, then BFS outward along remaining arrows. */
export function quiverLayout(q: ExtQuiverResponse): Point[] {
  const n = q.vertices.length;
  const pos: (Point | null)[] = Array(n).fill(null);
  const cycle = q.gentle?.cycle ?? [...Array(n).keys()];
  const r = Math.min(W, H) / 3.4;
  cycle.forEach((v, i) => {
    const ang = (2 * Math.PI * i) / cycle.length - Math.PI / 2;
    pos[v] = { x: CX + r * Math.cos(ang), y: CY + r * Math.sin(ang) };
  });
  const adj: number[][] = Array.from({ length: n }, () => []);
  const arrows = q.gentle?.arrows ?? q.arrows.map(([src, tgt]) => ({ src, tgt }));
  for (const a of arrows) {
    if (a.src !== a.tgt) {
      adj[a.src].push(a.tgt);
      adj[a.tgt].push(a.src);
    }
  }
  let frontier = cycle.filter((v) => pos[v] !== null);
  let ring = 1;
  while (frontier.length) {
    const next: number[] = [];
    for (const v of frontier) {
      let fan = 0;
      for (const w of adj[v]) {
        if (pos[w] === null) {
          const base = pos[v]!;
          const away = Math.atan2(base.y - CY, base.x - CX) + fan * 0.7;
          pos[w] = {
            x: base.x + 62 * ring * Math.cos(away) * 0.9,
            y: base.y + 62 * ring * Math.sin(away) * 0.9,
          };
          next.push(w);
          fan += 1;
        }
      }
    }
    frontier = next;
    ring += 0.4;
  }
  return pos.map((p, i) => p ?? { x: CX + 30 * i, y: H - 20 });
}

export function renderQuiver(q: ExtQuiverResponse, selected: number | null): string {
  const pos = quiverLayout(q);
  const parts: string[] = [
    `<svg viewBox="0 0 ${W} ${H}" xmlns="http://www.w3.org/2000/svg">`,
    `<defs><marker id="arr" markerWidth="7" markerHeight="7" refX="6" refY="3.5" orient="auto">` +
      `<path d="M0,0 L7,3.5 L0,7 z" fill="#555"/></marker></defs>`,
  ];
  const seen = new Map<string, number>();
  const arrowList = q.gentle
    ? q.gentle.arrows.map((a) => ({ ...a }))
    : q.arrows.map(([src, tgt, degree]) => ({ src, tgt, degree, kind: 'cut', color: 'straight' }));
  for (const a of arrowList) {
    const key = `${a.src}-${a.tgt}`;
    const bend = (seen.get(key) ?? 0) + 1;
    seen.set(key, bend);
    const dash = DASH[a.color] ?? '';
    const style = `fill="none" stroke="#555" stroke-width="1.4" marker-end="url(#arr)"` +
      (dash ? ` stroke-dasharray="${dash}"` : '');
    if (a.src === a.tgt) {
      const p = pos[a.src];
      parts.push(`<path d="${loopPath(p)}" ${style}/>`);
      parts.push(`<text x="${p.x}" y="${p.y - 52}" class="deg">${a.degree}</text>`);
    } else {
      const [s, t] = [pos[a.src], pos[a.tgt]];
      parts.push(`<path d="${arrowPath(s, t, bend)}" ${style}/>`);
      const lx = (s.x + t.x) / 2 - (t.y - s.y) * 0.18 * bend;
      const ly = (s.y + t.y) / 2 + (t.x - s.x) * 0.18 * bend;
      parts.push(`<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" class="deg">${a.degree}</text>`);
    }
  }
  q.vertices.forEach((label, i) => {
    const p = pos[i];
    const cls = i === selected ? 'vertex selected' : 'vertex';
    parts.push(
      `<g class="${cls}" data-vertex="${i}">` +
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="22"/>` +
        `<text x="${p.x.toFixed(1)}" y="${(p.y + 4).toFixed(1)}">${esc(label)}</text></g>`,
    );
  });
  parts.push('</svg>');
  return parts.join('\n');
}

export interface ExploreView {
  nodes: { serialized: string; current: boolean; frontier: boolean }[];
  edgeCount: number;
  svg: string;
}

/** View model for the neighborhood graph; node/edge counts mirror the
 * service payload one-to-one, frontier nodes (window-pruned) are grayed. */
export function exploreView(res: ExploreResponse, current: WireSmc): ExploreView {
  const curKey = serializeSmc(current);
  const nodes = res.vertices.map((triples, i) => {
    const smc: WireSmc = { p: res.p, objects: triples.map(([j, t, k]) => ({ j, t, k })) };
    return {
      serialized: serializeSmc(smc),
      current: serializeSmc(smc) === curKey,
      frontier: res.pruned.includes(i),
    };
  });
  const n = nodes.length;
  const parts: string[] = [
    `<svg viewBox="0 0 ${W} ${H}" xmlns="http://www.w3.org/2000/svg">`,
    `<defs><marker id="earr" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">` +
      `<path d="M0,0 L6,3 L0,6 z" fill="#999"/></marker></defs>`,
  ];
  const pos = nodes.map((_, i) => {
    const ang = (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2;
    const r = Math.min(W, H) / 2.6;
    return { x: CX + r * Math.cos(ang), y: CY + r * Math.sin(ang) };
  });
  for (const [u, v] of res.edges) {
    parts.push(
      `<path d="${arrowPath(pos[u], pos[v], 1)}" fill="none" stroke="#bbb" ` +
        `stroke-width="1" marker-end="url(#earr)"/>`,
    );
  }
  nodes.forEach((node, i) => {
    const cls = node.current ? 'eg-node current' : node.frontier ? 'eg-node frontier' : 'eg-node';
    parts.push(
      `<g class="${cls}" data-node="${i}"><circle cx="${pos[i].x.toFixed(1)}" ` +
        `cy="${pos[i].y.toFixed(1)}" r="9"/></g>`,
    );
  });
  parts.push('</svg>');
  return { nodes, edgeCount: res.edges.length, svg: parts.join('\n') };
}
