/**
 * Deterministic fixtures: a tiny per-pixel classifier with handcrafted
 * weights standing in for a pretrained segmentation network, plus a
 * 10-image set of synthetic frames with groundtruth masks.
 *
 * The fixture model has 4 output classes; class 1 ("person") activates on
 * warm bright pixels: logit = 8*r - 4*b - 1, against a constant background
 * logit of 1. Black pixels therefore score far below any threshold and
 * skin-toned pixels far above.
 */

import * as path from 'path';
import * as tf from '@tensorflow/tfjs';

import { diskSaveHandler } from '../src/model';
import { writeMaskPng, writeRgbPng } from '../src/png';

export const PERSON_CLASS = 1;

export async function buildFixtureModel(modelDir: string): Promise<void> {
  await tf.setBackend('cpu');
  await tf.ready();
  const model = tf.sequential();
  model.add(
    tf.layers.conv2d({
      inputShape: [null as unknown as number, null as unknown as number, 3],
      filters: 4,
      kernelSize: 1,
      activation: 'softmax',
      useBias: true,
    })
  );
  const kernel = tf.tensor4d(
    [
      // r -> [bg, person, clutter, spare]
      [[[0, 8, 0, 0], [0, 0, 4, 0], [0, -4, 0, 0]]],
    ],
    [1, 1, 3, 4]
  );
  const bias = tf.tensor1d([1, -1, -2, 0]);
  model.layers[0].setWeights([kernel, bias]);
  await model.save(diskSaveHandler(modelDir));
}

export interface FixtureImage {
  name: string;
  width: number;
  height: number;
  hasArm: boolean;
}

export function buildFixtureImages(imagesDir: string, masksDir: string): FixtureImage[] {
  const width = 64;
  const height = 48;
  const images: FixtureImage[] = [];
  for (let i = 0; i < 10; i++) {
    const name = `img_${String(i).padStart(2, '0')}.png`;
    const data = new Uint8Array(width * height * 3);
    const mask = new Uint8Array(width * height);
    const hasArm = i !== 0; // image 0 stays blank black
    if (hasArm) {
      const cx = 12 + 4.2 * i;
      const cy = height - 8 - (i % 3) * 3;
      const rx = 9 + (i % 4);
      const ry = 12 + (i % 5);
      for (let y = 0; y < height; y++) {
        for (let x = 0; x < width; x++) {
          const p = y * width + x;
          // cool, dim background the person class ignores
          data[p * 3] = 20;
          data[p * 3 + 1] = 40 + ((x * 2) % 60);
          data[p * 3 + 2] = 90 + ((y * 3) % 80);
          const inside =
            ((y - cy) / ry) ** 2 + ((x - cx) / rx) ** 2 <= 1.0;
          if (inside) {
            data[p * 3] = 200 + (i % 5) * 8;
            data[p * 3 + 1] = 150 + (i % 3) * 10;
            data[p * 3 + 2] = 100;
            mask[p] = 255;
          }
        }
      }
    }
    writeRgbPng(path.join(imagesDir, name), { width, height, data });
    writeMaskPng(path.join(masksDir, `gt_${String(i).padStart(2, '0')}.png`), width, height, mask);
    images.push({ name, width, height, hasArm });
  }
  return images;
}
