/* tslint:disable */
/* eslint-disable */

/**
 * Canonical decomposition of the Adam-only graph in a PGSolver file: its
 * tree shape and n-Strahler numbers for n = 1..3, or an odd cycle.
 */
export function decompose_pgsolver(text: string): string;

/**
 * Winning regions of a game in PGSolver format (target-priority reading).
 */
export function solve_pgsolver(text: string): string;

/**
 * `U(n,k,d)` with ω-blocks truncated to `w`, in bracket syntax.
 */
export function universal(n: number, k: number, d: number, w: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly decompose_pgsolver: (a: number, b: number) => [number, number];
    readonly solve_pgsolver: (a: number, b: number) => [number, number];
    readonly universal: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
