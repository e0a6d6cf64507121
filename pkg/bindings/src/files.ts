/**
 * Serialization of label arrays into the mask file formats the core CLI
 * consumes: P5 PGM for 2D masks (big-endian samples when labels exceed one
 * byte) and the JSON-sidecar + little-endian raw pair for 3D masks.
 */
import { writeFile } from "node:fs/promises";
import { join } from "node:path";

import type { ArrayView } from "./view.js";

function pgmBytes(view: ArrayView): Uint8Array {
  const [rows, cols] = view.shape;
  let maxval = 1;
  for (const v of view.data) {
    if (v > maxval) maxval = v;
  }
  const header = new TextEncoder().encode(`P5\n${cols} ${rows}\n${maxval}\n`);
  const wide = maxval > 255;
  const body = new Uint8Array(view.data.length * (wide ? 2 : 1));
  if (wide) {
    const dv = new DataView(body.buffer);
    for (let i = 0; i < view.data.length; i++) {
      dv.setUint16(i * 2, view.data[i], false); // big-endian per PNM
    }
  } else {
    body.set(view.data);
  }
  const out = new Uint8Array(header.length + body.length);
  out.set(header, 0);
  out.set(body, header.length);
  return out;
}

function rawBytes(view: ArrayView): { sidecar: string; payload: Uint8Array } {
  const wide = view.dtype === "u16";
  const payload = new Uint8Array(view.data.length * (wide ? 2 : 1));
  if (wide) {
    const dv = new DataView(payload.buffer);
    for (let i = 0; i < view.data.length; i++) {
      dv.setUint16(i * 2, view.data[i], true); // little-endian payload
    }
  } else {
    payload.set(view.data);
  }
  const sidecar =
    JSON.stringify({
      shape: view.shape,
      dtype: view.dtype,
      order: "row-major",
    }) + "\n";
  return { sidecar, payload };
}

/** Write the view into `dir` as `<name>.pgm` or `<name>.json`+`<name>.raw`;
 * returns the path the CLI should be pointed at. */
export async function writeMask(
  view: ArrayView,
  dir: string,
  name: string,
): Promise<string> {
  if (view.shape.length === 2) {
    const path = join(dir, `${name}.pgm`);
    await writeFile(path, pgmBytes(view));
    return path;
  }
  const { sidecar, payload } = rawBytes(view);
  const sidecarPath = join(dir, `${name}.json`);
  await writeFile(sidecarPath, sidecar);
  await writeFile(join(dir, `${name}.raw`), payload);
  return sidecarPath;
}

export { pgmBytes, rawBytes };
