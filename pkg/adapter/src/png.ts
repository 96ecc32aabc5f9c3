/**
 * PNG helpers for the mask exchange format: masks are single-channel 8-bit
 * PNGs with 0 = background and 255 = foreground.
 */

import * as fs from 'fs';
import { PNG } from 'pngjs';

export interface RgbImage {
  width: number;
  height: number;
  /** row-major RGB triples */
  data: Uint8Array;
}

export function readRgbPng(path: string): RgbImage {
  const png = PNG.sync.read(fs.readFileSync(path));
  const pixels = png.width * png.height;
  const data = new Uint8Array(pixels * 3);
  for (let i = 0; i < pixels; i++) {
    data[i * 3] = png.data[i * 4];
    data[i * 3 + 1] = png.data[i * 4 + 1];
    data[i * 3 + 2] = png.data[i * 4 + 2];
  }
  return { width: png.width, height: png.height, data };
}

export function writeRgbPng(path: string, image: RgbImage): void {
  const png = new PNG({ width: image.width, height: image.height });
  const pixels = image.width * image.height;
  for (let i = 0; i < pixels; i++) {
    png.data[i * 4] = image.data[i * 3];
    png.data[i * 4 + 1] = image.data[i * 3 + 1];
    png.data[i * 4 + 2] = image.data[i * 3 + 2];
    png.data[i * 4 + 3] = 255;
  }
  fs.writeFileSync(path, PNG.sync.write(png));
}

/** Write a binary mask as a grayscale (color type 0) PNG of 0/255 bytes. */
export function writeMaskPng(path: string, width: number, height: number, mask: Uint8Array): void {
  if (mask.length !== width * height) {
    throw new Error(`mask length ${mask.length} does not match ${width}x${height}`);
  }
  const png = new PNG({ width, height, colorType: 0, inputColorType: 0, bitDepth: 8 });
  // with inputColorType 0 pngjs consumes a 1-byte-per-pixel buffer
  png.data = Buffer.from(mask);
  fs.writeFileSync(path, PNG.sync.write(png, { colorType: 0, inputColorType: 0, bitDepth: 8 }));
}

/** Read a mask back, asserting the exchange format. */
export function readMaskPng(path: string): { width: number; height: number; mask: Uint8Array } {
  const png = PNG.sync.read(fs.readFileSync(path));
  const pixels = png.width * png.height;
  const mask = new Uint8Array(pixels);
  for (let i = 0; i < pixels; i++) {
    const r = png.data[i * 4];
    const g = png.data[i * 4 + 1];
    const b = png.data[i * 4 + 2];
    if (r !== g || g !== b) {
      throw new Error(`${path} is not single-channel: pixel ${i} has rgb(${r},${g},${b})`);
    }
    mask[i] = r;
  }
  return { width: png.width, height: png.height, mask };
}
