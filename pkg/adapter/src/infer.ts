/**
 * Batch inference: run the configured network over every PNG in a
 * directory, take the person-class probability, threshold it, and write
 * one exchange-format mask per image plus a run manifest.
 *
 * Inference is single-process on the deterministic CPU backend: the run
 * manifest (model checksum + parameters) fully determines the outputs.
 */

import * as fs from 'fs';
import * as path from 'path';
import * as tf from '@tensorflow/tfjs';

import { AdapterConfig } from './config';
import { loadSegmentationModel } from './model';
import { readRgbPng, writeMaskPng } from './png';

export interface ImageResult {
  source: string;
  mask: string;
  width: number;
  height: number;
  foregroundPixels: number;
}

export interface RunManifest {
  model: string;
  modelChecksum: string;
  personClassIndex: number;
  resizeLongestSide: number;
  threshold: number;
  backend: string;
  images: ImageResult[];
  failures: { source: string; error: string }[];
}

function listPngs(dir: string): string[] {
  let names: string[];
  try {
    names = fs.readdirSync(dir);
  } catch (err) {
    throw new Error(`cannot list images directory ${dir}: ${(err as Error).message}`);
  }
  const pngs = names.filter((name) => name.toLowerCase().endsWith('.png')).sort();
  if (pngs.length === 0) {
    throw new Error(`no PNG images found in ${dir}`);
  }
  return pngs;
}

function scaledSize(width: number, height: number, longest: number): [number, number] {
  const scale = longest / Math.max(width, height);
  return [Math.max(1, Math.round(height * scale)), Math.max(1, Math.round(width * scale))];
}

/**
 * Person-class probability map for one image. Softmax is applied across the
 * class channel unless the output already looks like a per-pixel
 * distribution (all values in [0, 1] and channels summing to ~1).
 */
function personProbability(
  model: tf.LayersModel,
  image: { width: number; height: number; data: Uint8Array },
  config: AdapterConfig
): tf.Tensor2D {
  return tf.tidy(() => {
    const input = tf
      .tensor3d(image.data, [image.height, image.width, 3], 'float32')
      .div(255.0)
      .expandDims(0) as tf.Tensor4D;
    const [th, tw] = scaledSize(image.width, image.height, config.resizeLongestSide);
    const resized = tf.image.resizeBilinear(input, [th, tw]);
    let scores = model.predict(resized) as tf.Tensor4D;
    if (scores.rank !== 4) {
      throw new Error(`model output must be [batch, h, w, classes], got rank ${scores.rank}`);
    }
    const classes = scores.shape[3]!;
    if (config.personClassIndex >= classes) {
      throw new Error(
        `personClassIndex ${config.personClassIndex} out of range for ${classes} output channels`
      );
    }
    const min = scores.min().dataSync()[0];
    const max = scores.max().dataSync()[0];
    const sumIsOne =
      Math.abs((scores.sum(3).mean().dataSync()[0] as number) - 1.0) < 1e-3;
    if (!(min >= 0 && max <= 1 && sumIsOne)) {
      scores = tf.softmax(scores, 3);
    }
    return scores
      .slice([0, 0, 0, config.personClassIndex], [1, th, tw, 1])
      .squeeze([0, 3]) as tf.Tensor2D;
  });
}

export async function inferMasks(
  imagesDir: string,
  outDir: string,
  config: AdapterConfig
): Promise<RunManifest> {
  await tf.setBackend('cpu');
  await tf.ready();
  const { model, checksum } = await loadSegmentationModel(config.model);
  fs.mkdirSync(outDir, { recursive: true });

  const manifest: RunManifest = {
    model: config.model,
    modelChecksum: checksum,
    personClassIndex: config.personClassIndex,
    resizeLongestSide: config.resizeLongestSide,
    threshold: config.threshold,
    backend: tf.getBackend(),
    images: [],
    failures: [],
  };

  for (const name of listPngs(imagesDir)) {
    const sourcePath = path.join(imagesDir, name);
    try {
      const image = readRgbPng(sourcePath);
      const maskBytes = tf.tidy(() => {
        const prob = personProbability(model, image, config);
        const thresholded = prob.greaterEqual(config.threshold).mul(255);
        const restored = tf.image.resizeNearestNeighbor(
          thresholded.expandDims(2) as tf.Tensor3D,
          [image.height, image.width]
        );
        return new Uint8Array(restored.dataSync());
      });
      const stem = name.replace(/\.png$/i, '');
      const maskName = `${stem}.png`;
      writeMaskPng(path.join(outDir, maskName), image.width, image.height, maskBytes);
      let fg = 0;
      for (const v of maskBytes) {
        if (v >= 128) fg++;
      }
      manifest.images.push({
        source: name,
        mask: maskName,
        width: image.width,
        height: image.height,
        foregroundPixels: fg,
      });
    } catch (err) {
      console.error(`egoseg-adapter: skipping ${name}: ${(err as Error).message}`);
      manifest.failures.push({ source: name, error: (err as Error).message });
    }
  }

  fs.writeFileSync(
    path.join(outDir, 'run_manifest.json'),
    JSON.stringify(manifest, null, 2) + '\n'
  );
  return manifest;
}
