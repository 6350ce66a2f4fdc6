/* tslint:disable */
/* eslint-disable */

/**
 * A rasterized triangle with the numbers the page displays.
 */
export class Rendered {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Foreground as opaque white, background transparent.
     */
    rgba(): Uint8Array;
    readonly area: number;
    readonly foreground: number;
    /**
     * Whether the per-pixel reference rasterizer produced the same mask.
     */
    readonly oracleAgrees: boolean;
    readonly perimeter: number;
}

/**
 * `[alpha, beta, gamma, inside]` for point `(x, y)`; `inside` is 1 or 0.
 */
export function barycentric(coords: Float64Array, x: number, y: number): Float64Array;

/**
 * `[iou, miou, accuracy]` of the `pred` triangle's mask against `reference`.
 */
export function compare(width: number, height: number, pred: Float64Array, reference: Float64Array): Float64Array;

/**
 * Rasterizes a triangle onto a `width x height` grid.
 */
export function render(width: number, height: number, coords: Float64Array): Rendered;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_rendered_free: (a: number, b: number) => void;
    readonly barycentric: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly compare: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly render: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly rendered_area: (a: number) => number;
    readonly rendered_foreground: (a: number) => number;
    readonly rendered_oracleAgrees: (a: number) => number;
    readonly rendered_perimeter: (a: number) => number;
    readonly rendered_rgba: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
