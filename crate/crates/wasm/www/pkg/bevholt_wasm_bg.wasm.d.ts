/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_equilibria_free: (a: number, b: number) => void;
export const __wbg_get_preset_a: (a: number) => [number, number];
export const __wbg_get_preset_b: (a: number) => [number, number];
export const __wbg_get_preset_equation: (a: number) => [number, number];
export const __wbg_get_preset_horizon: (a: number) => number;
export const __wbg_get_preset_initial: (a: number) => [number, number];
export const __wbg_get_preset_order: (a: number) => number;
export const __wbg_get_preset_period: (a: number) => number;
export const __wbg_preset_free: (a: number, b: number) => void;
export const __wbg_run_free: (a: number, b: number) => void;
export const __wbg_set_preset_a: (a: number, b: number, c: number) => void;
export const __wbg_set_preset_b: (a: number, b: number, c: number) => void;
export const __wbg_set_preset_equation: (a: number, b: number, c: number) => void;
export const __wbg_set_preset_horizon: (a: number, b: number) => void;
export const __wbg_set_preset_initial: (a: number, b: number, c: number) => void;
export const __wbg_set_preset_order: (a: number, b: number) => void;
export const __wbg_set_preset_period: (a: number, b: number) => void;
export const equilibria_classification: (a: number, b: number) => [number, number];
export const equilibria_count: (a: number) => number;
export const equilibria_multiplier: (a: number, b: number) => number;
export const equilibria_roots: (a: number, b: number) => [number, number];
export const equilibria_value: (a: number, b: number) => number;
export const preset: (a: number) => [number, number, number];
export const run_maxDeviation: (a: number) => number;
export const run_order: (a: number) => number;
export const run_period: (a: number) => number;
export const run_truncatedAt: (a: number) => number;
export const run_values: (a: number) => [number, number];
export const simulate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const stability: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
