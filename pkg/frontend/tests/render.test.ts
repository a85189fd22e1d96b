import { describe, expect, it } from 'vitest';

import { exploreView, renderQuiver } from '../src/render.js';
import type { ExploreResponse, ExtQuiverResponse } from '../src/types.js';

const QUIVER: ExtQuiverResponse = {
  schema: 'tubecat/1',
  vertices: ['S2^(3)', 'S1^(2)[2]', 'S1'],
  arrows: [
    [0, 0, 1],
    [1, 0, 2],
    [1, 0, 3],
    [1, 2, 1],
  ],
  gentle: {
    rank: 1,
    cycle: [0],
    vertices: ['S2^(3)', 'S1^(2)[2]', 'S1'],
    arrows: [
      { src: 0, tgt: 0, degree: 1, kind: 'cut', color: 'loop' },
      { src: 1, tgt: 0, degree: 2, kind: 'socle', color: 'straight' },
      { src: 1, tgt: 2, degree: 1, kind: 'top', color: 'dotted' },
    ],
  },
};

describe('quiver rendering', () => {
  it('draws every vertex and labels degrees', () => {
    const svg = renderQuiver(QUIVER, 1);
    expect(svg).toContain('S2^(3)');
    expect(svg).toContain('S1^(2)[2]');
    expect((svg.match(/class="vertex/g) ?? []).length).toBe(3);
    expect(svg).toContain('class="vertex selected"');
    expect(svg).toContain('marker-end');
  });

  it('renders loops with their own path', () => {
    const svg = renderQuiver(QUIVER, null);
    expect((svg.match(/<path/g) ?? []).length).toBeGreaterThanOrEqual(3);
  });
});

const EXPLORE: ExploreResponse = {
  schema: 'tubecat/1',
  p: 2,
  radius: 1,
  window: 2,
  vertices: [
    [[0, 1, 0], [1, 1, 0]],
    [[0, 2, 0], [1, 1, 1]],
    [[0, 1, 1], [1, 2, 0]],
  ],
  edges: [
    [0, 1, [1, 1, 0]],
    [0, 2, [0, 1, 0]],
  ],
  pruned: [2],
};

describe('explore view', () => {
  it('node and edge counts mirror the payload', () => {
    const view = exploreView(EXPLORE, { p: 2, objects: [{ j: 0, t: 1, k: 0 }, { j: 1, t: 1, k: 0 }] });
    expect(view.nodes).toHaveLength(EXPLORE.vertices.length);
    expect(view.edgeCount).toBe(EXPLORE.edges.length);
    expect(view.nodes.filter((n) => n.current)).toHaveLength(1);
    expect(view.nodes.filter((n) => n.frontier)).toHaveLength(1);
    expect(view.svg).toContain('eg-node current');
    expect(view.svg).toContain('eg-node frontier');
  });
});
