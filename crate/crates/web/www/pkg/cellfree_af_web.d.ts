/* tslint:disable */
/* eslint-disable */

export class Metrics {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `Nλ/2π`; NaN for a continuous ring.
     */
    alias_radius: number;
    bound_satisfied: boolean;
    /**
     * Smallest `N` covering `r_s_max` without aliasing.
     */
    min_antennas: number;
    /**
     * First AF null for a narrowband pulse, in wavelengths.
     */
    resolution: number;
}

export function afCurve(n_antennas: number, rw: number, theta_ss: number, r_max: number, points: number): Float64Array;

export function designMetrics(n_antennas: number, r_s_max: number): Metrics;

export function gainMap(n_antennas: number, rw: number, target_x: number, target_y: number, half_width: number, size: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_metrics_alias_radius: (a: number) => number;
    readonly __wbg_get_metrics_bound_satisfied: (a: number) => number;
    readonly __wbg_get_metrics_min_antennas: (a: number) => number;
    readonly __wbg_get_metrics_resolution: (a: number) => number;
    readonly __wbg_metrics_free: (a: number, b: number) => void;
    readonly __wbg_set_metrics_alias_radius: (a: number, b: number) => void;
    readonly __wbg_set_metrics_bound_satisfied: (a: number, b: number) => void;
    readonly __wbg_set_metrics_min_antennas: (a: number, b: number) => void;
    readonly __wbg_set_metrics_resolution: (a: number, b: number) => void;
    readonly afCurve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly designMetrics: (a: number, b: number) => [number, number, number];
    readonly gainMap: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
