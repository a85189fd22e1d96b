/** Explorer session state: current collection, history, undo, pins.
 *
 * Replaying the recorded history from the initial collection through the
 * service reproduces the current state exactly; undo performs the inverse
 * mutation via the service and checks it lands on the recorded state.
 */

import type { ApiClient } from './api.js';
import { serializeSmc, type MutationRecord, type WireSmc } from './types.js';

export interface ViewOptions {
  quotientShift: boolean;
  quotientRotation: boolean;
}

export class Session {
  initial: WireSmc | null = null;
  current: WireSmc | null = null;
  history: MutationRecord[] = [];
  pinned: WireSmc[] = [];
  view: ViewOptions = { quotientShift: false, quotientRotation: false };

  private queue: Promise<unknown> = Promise.resolve();

  constructor(private readonly client: ApiClient) {}

  get busy(): boolean {
    return this.inFlight > 0;
  }

  private inFlight = 0;

  /** Serialize interactions: at most one service mutation in flight. */
  private enqueue<T>(task: () => Promise<T>): Promise<T> {
    const run = this.queue.then(async () => {
      this.inFlight += 1;
      try {
        return await task();
      } finally {
        this.inFlight -= 1;
      }
    });
    this.queue = run.catch(() => undefined);
    return run;
  }

  load(smc: WireSmc): Promise<WireSmc> {
    return this.enqueue(async () => {
      const res = await this.client.verify(smc);
      this.initial = res.smc;
      this.current = res.smc;
      this.history = [];
      return res.smc;
    });
  }

  mutate(at: number, dir: 'left' | 'right'): Promise<WireSmc> {
    return this.enqueue(async () => {
      if (!this.current) throw new Error('no collection loaded');
      const before = this.current;
      const res = await this.client.mutate(before, at, dir);
      this.history.push({ at, dir, before, after: res.smc });
      this.current = res.smc;
      return res.smc;
    });
  }

  get canUndo(): boolean {
    return this.history.length > 0;
  }

  /** Inverse mutation through the service; never a local guess. */
  undo(): Promise<WireSmc> {
    return this.enqueue(async () => {
      const last = this.history[this.history.length - 1];
      if (!last) throw new Error('nothing to undo');
      const inverse = last.dir === 'left' ? 'right' : 'left';
      const res = await this.client.mutate(last.after, last.at, inverse);
      if (serializeSmc(res.smc) !== serializeSmc(last.before)) {
        throw new Error('inverse mutation did not restore the previous state');
      }
      this.history.pop();
      this.current = res.smc;
      return res.smc;
    });
  }

  /** Jump to an explored neighbor; recorded as a plain mutation step when the
   *  steps are known, otherwise as a fresh load. */
  jumpTo(smc: WireSmc): Promise<WireSmc> {
    return this.enqueue(async () => {
      const res = await this.client.verify(smc);
      this.initial = res.smc;
      this.current = res.smc;
      this.history = [];
      return res.smc;
    });
  }

  pin(): void {
    if (this.current) this.pinned.push(this.current);
  }

  /** Display transform only, built from the service's classification data:
   *  shifts the whole collection so the tube part reads at shift 0, and/or
   *  rotates indices so the first tube-part socle reads as 0.  No homological
   *  computation happens here. */
  displayForm(smc: WireSmc, shiftNorm: number, tubeSocle: number): WireSmc {
    const dk = this.view.quotientShift ? shiftNorm : 0;
    const dj = this.view.quotientRotation ? tubeSocle : 0;
    return {
      p: smc.p,
      objects: smc.objects.map((o) => ({
        j: ((o.j - dj) % smc.p + smc.p) % smc.p,
        t: o.t,
        k: o.k - dk,
      })),
    };
  }

  breadcrumbs(): string[] {
    const out: string[] = [];
    if (this.initial) out.push(serializeSmc(this.initial));
    for (const step of this.history) out.push(serializeSmc(step.after));
    return out;
  }

  /** Replay the recorded steps from the initial state through the service;
   *  returns the serialized state after every step. */
  async replay(): Promise<string[]> {
    if (!this.initial) return [];
    let state = this.initial;
    const trail = [serializeSmc(state)];
    for (const step of this.history) {
      const res = await this.client.mutate(state, step.at, step.dir);
      state = res.smc;
      trail.push(serializeSmc(state));
    }
    return trail;
  }
}
