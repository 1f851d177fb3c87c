/* tslint:disable */
/* eslint-disable */

/**
 * Equilibria of a constant model with their characteristic roots.
 */
export class Equilibria {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    classification(i: number): string;
    count(): number;
    multiplier(i: number): number;
    /**
     * Roots as `[re0, im0, re1, im1, …]`.
     */
    roots(i: number): Float64Array;
    value(i: number): number;
}

/**
 * Form values reproducing one of the built-in figures.
 */
export class Preset {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    a: string;
    b: string;
    equation: string;
    horizon: number;
    initial: string;
    order: number;
    get period(): number | undefined;
    set period(value: number | null | undefined);
}

export class Run {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    maxDeviation(): number;
    order(): number;
    /**
     * Minimal period at relative tolerance 1e-9, if any.
     */
    period(): number | undefined;
    /**
     * Index whose denominator vanished, if the run stopped early.
     */
    truncatedAt(): number | undefined;
    values(): Float64Array;
}

export function preset(id: number): Preset;

export function simulate(order: number, a: string, b: string, period: number | null | undefined, initial: string, horizon: number): Run;

export function stability(order: number, a: string, b: string): Equilibria;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_equilibria_free: (a: number, b: number) => void;
    readonly __wbg_get_preset_a: (a: number) => [number, number];
    readonly __wbg_get_preset_b: (a: number) => [number, number];
    readonly __wbg_get_preset_equation: (a: number) => [number, number];
    readonly __wbg_get_preset_horizon: (a: number) => number;
    readonly __wbg_get_preset_initial: (a: number) => [number, number];
    readonly __wbg_get_preset_order: (a: number) => number;
    readonly __wbg_get_preset_period: (a: number) => number;
    readonly __wbg_preset_free: (a: number, b: number) => void;
    readonly __wbg_run_free: (a: number, b: number) => void;
    readonly __wbg_set_preset_a: (a: number, b: number, c: number) => void;
    readonly __wbg_set_preset_b: (a: number, b: number, c: number) => void;
    readonly __wbg_set_preset_equation: (a: number, b: number, c: number) => void;
    readonly __wbg_set_preset_horizon: (a: number, b: number) => void;
    readonly __wbg_set_preset_initial: (a: number, b: number, c: number) => void;
    readonly __wbg_set_preset_order: (a: number, b: number) => void;
    readonly __wbg_set_preset_period: (a: number, b: number) => void;
    readonly equilibria_classification: (a: number, b: number) => [number, number];
    readonly equilibria_count: (a: number) => number;
    readonly equilibria_multiplier: (a: number, b: number) => number;
    readonly equilibria_roots: (a: number, b: number) => [number, number];
    readonly equilibria_value: (a: number, b: number) => number;
    readonly preset: (a: number) => [number, number, number];
    readonly run_maxDeviation: (a: number) => number;
    readonly run_order: (a: number) => number;
    readonly run_period: (a: number) => number;
    readonly run_truncatedAt: (a: number) => number;
    readonly run_values: (a: number) => [number, number];
    readonly simulate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly stability: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
