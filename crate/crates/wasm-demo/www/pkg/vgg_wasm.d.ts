/* tslint:disable */
/* eslint-disable */

/**
 * Best-response dynamics on `C_n` from the given profile, with every
 * visited state and its gap multiset.
 */
export function cycle_dynamics(n: number, positions: string, disjoint: boolean, random: boolean, seed: bigint): string;

/**
 * Payoffs, cells, best responses and both equilibrium verdicts for a
 * profile on the cycle `C_n`.
 */
export function explore_cycle(n: number, positions: string, disjoint: boolean): string;

/**
 * The discrepancy family member and its two equilibrium costs.
 */
export function family_costs(k: number, a: number, b: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cycle_dynamics: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
    readonly explore_cycle: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly family_costs: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
