/** DOM wiring for the explorer: presets, click-to-mutate, undo, explore. */

import { HttpClient, ServiceError } from './api.js';
import { PRESETS } from './presets.js';
import { exploreView, renderQuiver } from './render.js';
import { Session } from './session.js';
import { formatObject, formatSmc, type WireSmc } from './types.js';

const base = (document.querySelector('meta[name="tubecat-api"]') as HTMLMetaElement)?.content
  ?? 'http://127.0.0.1:8421';
const client = new HttpClient(base);
const session = new Session(client);

const el = (id: string) => document.getElementById(id)!;

let selected: number | null = null;

function setBusy(busy: boolean): void {
  document.querySelectorAll('button').forEach((b) => ((b as HTMLButtonElement).disabled = busy));
}

function showError(err: unknown): void {
  const box = el('error');
  if (err instanceof ServiceError) {
    box.textContent = `${err.message} — request: ${JSON.stringify(err.requestBody)}`;
  } else {
    box.textContent = String(err);
  }
}

async function refresh(): Promise<void> {
  const smc = session.current;
  if (!smc) return;
  el('error').textContent = '';
  el('current').textContent = formatSmc(smc);
  const members = el('members');
  members.innerHTML = '';
  smc.objects.forEach((o, i) => {
    const row = document.createElement('div');
    row.className = 'member' + (i === selected ? ' selected' : '');
    const tag = document.createElement('span');
    tag.textContent = formatObject(o);
    tag.onclick = () => {
      selected = i;
      void refresh();
    };
    row.appendChild(tag);
    for (const dir of ['left', 'right'] as const) {
      const btn = document.createElement('button');
      btn.textContent = dir === 'left' ? 'mutate left' : 'mutate right';
      btn.onclick = () => void act(() => session.mutate(i, dir));
      row.appendChild(btn);
    }
    members.appendChild(row);
  });
  (el('undo') as HTMLButtonElement).disabled = !session.canUndo;
  el('breadcrumbs').textContent = session.breadcrumbs().join('  ->  ');
  try {
    const [quiver, cls] = await Promise.all([
      client.extquiver(smc, true),
      client.classify(smc),
    ]);
    el('quiver').innerHTML = renderQuiver(quiver, selected);
    document.querySelectorAll('#quiver .vertex').forEach((g) => {
      (g as SVGGElement).addEventListener('click', () => {
        selected = Number((g as SVGGElement).dataset.vertex);
        void refresh();
      });
    });
    el('classify').textContent =
      `tube rank ${cls.rank} at shift ${cls.shift_norm}; ` +
      `segments ${JSON.stringify(cls.segments)}; ` +
      `tube part ${cls.x_tube.map(formatObject).join(', ') || '-'}; ` +
      `blocks ${cls.pre_smc.map((b) => b.map(formatObject).join(', ')).join(' | ') || '-'}`;
    if (session.view.quotientShift || session.view.quotientRotation) {
      const socles = cls.x_tube.map((o) => ((o.j - o.t + 1) % smc.p + smc.p) % smc.p);
      const anchor = socles.length ? Math.min(...socles) : 0;
      const shown = session.displayForm(smc, cls.shift_norm, anchor);
      el('normalized').textContent = `up to ${session.view.quotientShift ? 'shift' : ''}` +
        `${session.view.quotientShift && session.view.quotientRotation ? ' and ' : ''}` +
        `${session.view.quotientRotation ? 'rotation' : ''}: ${formatSmc(shown)}`;
    } else {
      el('normalized').textContent = '';
    }
  } catch (err) {
    showError(err);
  }
}

async function act(task: () => Promise<unknown>): Promise<void> {
  setBusy(true);
  try {
    await task();
  } catch (err) {
    showError(err);
  } finally {
    setBusy(false);
    await refresh();
  }
}

async function runExplore(): Promise<void> {
  const smc = session.current;
  if (!smc) return;
  const radius = Number((el('radius') as HTMLInputElement).value) || 1;
  try {
    const res = await client.explore(smc, radius);
    const view = exploreView(res, smc);
    el('explore-stats').textContent =
      `${view.nodes.length} vertices, ${view.edgeCount} edges (window ${res.window})`;
    el('explore').innerHTML = view.svg;
    document.querySelectorAll('#explore .eg-node').forEach((g, i) => {
      (g as SVGGElement).addEventListener('click', () => {
        const triples = res.vertices[i];
        const target: WireSmc = { p: res.p, objects: triples.map(([j, t, k]) => ({ j, t, k })) };
        void act(() => session.jumpTo(target));
      });
    });
  } catch (err) {
    showError(err);
  }
}

function init(): void {
  const select = el('preset') as HTMLSelectElement;
  PRESETS.forEach((preset, i) => {
    const opt = document.createElement('option');
    opt.value = String(i);
    opt.textContent = preset.name;
    select.appendChild(opt);
  });
  el('load').onclick = () =>
    void act(() => session.load(PRESETS[Number(select.value)].smc));
  el('undo').onclick = () => void act(() => session.undo());
  el('pin').onclick = () => {
    session.pin();
    el('pins').textContent = session.pinned.map(formatSmc).join('   ');
  };
  (el('view-shift') as HTMLInputElement).onchange = (ev) => {
    session.view.quotientShift = (ev.target as HTMLInputElement).checked;
    void refresh();
  };
  (el('view-rotation') as HTMLInputElement).onchange = (ev) => {
    session.view.quotientRotation = (ev.target as HTMLInputElement).checked;
    void refresh();
  };
  el('do-explore').onclick = () => void runExplore();
  void act(() => session.load(PRESETS[0].smc));
}

init();
