/** Thin client for the local JSON service; the single source of truth.
 *
 * The UI never computes mathematics locally: every displayed object is a
 * response from one of these calls.
 */

import type {
  ClassifyResponse,
  ExploreResponse,
  ExtQuiverResponse,
  MutateResponse,
  WireSmc,
} from './types.js';

export interface ApiClient {
  verify(smc: WireSmc): Promise<{ ok: boolean; smc: WireSmc }>;
  classify(smc: WireSmc): Promise<ClassifyResponse>;
  mutate(smc: WireSmc, at: number, dir: 'left' | 'right'): Promise<MutateResponse>;
  extquiver(smc: WireSmc, gentle?: boolean): Promise<ExtQuiverResponse>;
  explore(start: WireSmc, radius: number, window?: number): Promise<ExploreResponse>;
}

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly requestBody: unknown,
  ) {
    super(message);
  }
}

export class HttpClient implements ApiClient {
  constructor(private readonly base: string) {}

  private async post<T>(op: string, body: unknown): Promise<T> {
    const resp = await fetch(`${this.base}/api/${op}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    const payload = await resp.json();
    if (!resp.ok) {
      const msg = payload?.error?.message ?? `service error ${resp.status}`;
      // surfaced verbatim together with the failing request body
      throw new ServiceError(msg, resp.status, body);
    }
    return payload as T;
  }

  verify(smc: WireSmc) {
    return this.post<{ ok: boolean; smc: WireSmc }>('verify', { smc });
  }

  classify(smc: WireSmc) {
    return this.post<ClassifyResponse>('classify', { smc });
  }

  mutate(smc: WireSmc, at: number, dir: 'left' | 'right') {
    return this.post<MutateResponse>('mutate', { smc, at, dir });
  }

  extquiver(smc: WireSmc, gentle = true) {
    return this.post<ExtQuiverResponse>('extquiver', { smc, gentle });
  }

  explore(start: WireSmc, radius: number, window?: number) {
    const body: Record<string, unknown> = { start, radius };
    if (window !== undefined) body.window = window;
    return this.post<ExploreResponse>('explore', body);
  }
}
