/**
 * ArrayView: a validated (shape, labels) pair ready for serialization.
 *
 * Uint8Array and Uint16Array inputs are referenced zero-copy; every other
 * accepted array type is narrowed into a fresh Uint8/Uint16Array with an
 * explicit overflow check, so caller memory is never mutated and lossy
 * conversions never happen silently.
 */

export type LabelData =
  | Uint8Array
  | Uint16Array
  | Uint8ClampedArray
  | Int8Array
  | Int16Array
  | Int32Array
  | Uint32Array
  | BigInt64Array
  | BigUint64Array
  | number[];

export interface ArrayView {
  readonly shape: readonly number[];
  readonly dtype: "u8" | "u16";
  /** element width in bytes */
  readonly elementWidth: 1 | 2;
  readonly data: Uint8Array | Uint16Array;
  /** false when the caller's buffer is referenced directly */
  readonly copied: boolean;
}

export const MAX_LABEL = 65535;

function checkShape(shape: readonly number[], length: number): void {
  if (shape.length !== 2 && shape.length !== 3) {
    throw new RangeError(`mask rank must be 2 or 3, got ${shape.length}`);
  }
  let product = 1;
  for (const extent of shape) {
    if (!Number.isInteger(extent) || extent < 1) {
      throw new RangeError(`every extent must be a positive integer, got ${extent}`);
    }
    product *= extent;
  }
  if (product !== length) {
    throw new RangeError(
      `data has ${length} elements, shape [${shape.join(", ")}] needs ${product}`,
    );
  }
}

function narrow(data: Exclude<LabelData, Uint8Array | Uint16Array>): {
  data: Uint8Array | Uint16Array;
  dtype: "u8" | "u16";
} {
  const isBig =
    data instanceof BigInt64Array || data instanceof BigUint64Array;
  let max = 0;
  for (let i = 0; i < data.length; i++) {
    const raw = data[i];
    const value = isBig ? Number(raw) : (raw as number);
    if (!isBig && !Number.isInteger(value)) {
      throw new TypeError(`labels must be integers, got ${value} at index ${i}`);
    }
    if (value < 0 || value > MAX_LABEL) {
      throw new RangeError(
        `label ${value} at index ${i} outside [0, ${MAX_LABEL}]`,
      );
    }
    if (value > max) max = value;
  }
  const out = max > 255 ? new Uint16Array(data.length) : new Uint8Array(data.length);
  for (let i = 0; i < data.length; i++) {
    out[i] = isBig ? Number(data[i]) : (data[i] as number);
  }
  return { data: out, dtype: max > 255 ? "u16" : "u8" };
}

/** Build an ArrayView over flat row-major label data. */
export function arrayView(shape: readonly number[], data: LabelData): ArrayView {
  checkShape(shape, data.length);
  if (data instanceof Uint8Array) {
    return { shape: [...shape], dtype: "u8", elementWidth: 1, data, copied: false };
  }
  if (data instanceof Uint16Array) {
    return { shape: [...shape], dtype: "u16", elementWidth: 2, data, copied: false };
  }
  const narrowed = narrow(data);
  return {
    shape: [...shape],
    dtype: narrowed.dtype,
    elementWidth: narrowed.dtype === "u8" ? 1 : 2,
    data: narrowed.data,
    copied: true,
  };
}
