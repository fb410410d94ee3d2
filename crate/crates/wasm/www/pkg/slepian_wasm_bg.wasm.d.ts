/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_basis_free: (a: number, b: number) => void;
export const basis_eigenvalues: (a: number) => [number, number];
export const basis_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const basis_orders: (a: number) => [number, number];
export const basis_shannon: (a: number) => number;
export const basis_slice: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const shannon_curve_fb: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const shannon_curve_fl: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
