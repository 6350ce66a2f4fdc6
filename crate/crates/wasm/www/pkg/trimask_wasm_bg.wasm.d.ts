/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_rendered_free: (a: number, b: number) => void;
export const barycentric: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const compare: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const render: (a: number, b: number, c: number, d: number) => [number, number, number];
export const rendered_area: (a: number) => number;
export const rendered_foreground: (a: number) => number;
export const rendered_oracleAgrees: (a: number) => number;
export const rendered_perimeter: (a: number) => number;
export const rendered_rgba: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
