/* tslint:disable */
/* eslint-disable */

/**
 * Both Costas checks, fixed points and the Golomb test for a literal permutation.
 */
export function costasCheck(permutation: string): string;

/**
 * Family members and exhaustive maximum with witnesses.
 */
export function familyMax(prime: number, family: string, filter: string): string;

/**
 * Full correlation grid of two members (`welch-exp:3`, `power:5`, or a
 * literal `3,2,6,4,5,1`), as JSON with `rows[v][u]`.
 */
export function grid(a: string, b: string, prime?: number | null): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly costasCheck: (a: number, b: number) => [number, number, number, number];
    readonly familyMax: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly grid: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
