/* tslint:disable */
/* eslint-disable */

/**
 * A solved Slepian basis kept alive on the JS side so spectrum and slices share one solve.
 */
export class Basis {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Eigenvalues in decreasing order.
     */
    eigenvalues(): Float64Array;
    /**
     * `domain` is "fl" (size = P) or "fb" (size = K, `m` radial nodes); region is [r1,r2]×[θ1,θ2]×[0,2π).
     */
    constructor(domain: string, r1: number, r2: number, theta1: number, theta2: number, size: number, l: number, m: number);
    /**
     * Azimuthal order of each eigenfunction, aligned with `eigenvalues`.
     */
    orders(): Int32Array;
    shannon(): number;
    slice(rank: number, n_r: number, n_theta: number, r_max: number): Float64Array;
}

/**
 * N_FB(K) at K = k_max·i/steps for i = 1..=steps.
 */
export function shannon_curve_fb(r1: number, r2: number, theta1: number, theta2: number, l: number, k_max: number, steps: number): Float64Array;

/**
 * N_FL(P) for P = 1..=p_max.
 */
export function shannon_curve_fl(r1: number, r2: number, theta1: number, theta2: number, l: number, p_max: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_basis_free: (a: number, b: number) => void;
    readonly basis_eigenvalues: (a: number) => [number, number];
    readonly basis_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly basis_orders: (a: number) => [number, number];
    readonly basis_shannon: (a: number) => number;
    readonly basis_slice: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly shannon_curve_fb: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly shannon_curve_fl: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
