/* tslint:disable */
/* eslint-disable */

/**
 * The coupled 2x2 family for `theta = b_alpha^mult`: computed spectrum next
 * to the predicted one (`4` with multiplicity `deg theta`, zeros elsewhere).
 */
export function coupled_spectrum(alpha_re: number, alpha_im: number, mult: number, section: number): string;

/**
 * Weights, moments and the two moment-Hankel minimum eigenvalues for every
 * size up to `k`.
 */
export function cowen_long(alpha: number, k: number): string;

/**
 * Scalar trigonometric polynomial `sum_k (re[k] + i im[k]) z^(lowest + k)`:
 * commutator spectrum, PSD verdict, classification and a witness search.
 */
export function probe_laurent(lowest: number, re: Float64Array, im: Float64Array, section: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly coupled_spectrum: (a: number, b: number, c: number, d: number) => [number, number];
    readonly cowen_long: (a: number, b: number) => [number, number];
    readonly probe_laurent: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
