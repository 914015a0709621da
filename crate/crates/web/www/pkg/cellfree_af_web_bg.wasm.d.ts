/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_metrics_alias_radius: (a: number) => number;
export const __wbg_get_metrics_bound_satisfied: (a: number) => number;
export const __wbg_get_metrics_min_antennas: (a: number) => number;
export const __wbg_get_metrics_resolution: (a: number) => number;
export const __wbg_metrics_free: (a: number, b: number) => void;
export const __wbg_set_metrics_alias_radius: (a: number, b: number) => void;
export const __wbg_set_metrics_bound_satisfied: (a: number, b: number) => void;
export const __wbg_set_metrics_min_antennas: (a: number, b: number) => void;
export const __wbg_set_metrics_resolution: (a: number, b: number) => void;
export const afCurve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const designMetrics: (a: number, b: number) => [number, number, number];
export const gainMap: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
