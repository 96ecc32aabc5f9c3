/**
 * Model loading from a local directory (model.json + weight shards) without
 * the native tfjs-node bindings, plus a checksum over everything that
 * determines the network's behavior.
 */

import * as crypto from 'crypto';
import * as fs from 'fs';
import * as path from 'path';
import * as tf from '@tensorflow/tfjs';

function toArrayBuffer(buf: Buffer): ArrayBuffer {
  const out = new ArrayBuffer(buf.byteLength);
  new Uint8Array(out).set(buf);
  return out;
}

/** IOHandler reading the standard model.json + shard layout from disk. */
export function diskLoadHandler(modelDir: string): tf.io.IOHandler {
  return {
    load: async () => {
      const manifestPath = path.join(modelDir, 'model.json');
      const manifest = JSON.parse(fs.readFileSync(manifestPath, 'utf-8'));
      const weightSpecs: tf.io.WeightsManifestEntry[] = [];
      const shards: Buffer[] = [];
      for (const group of manifest.weightsManifest) {
        weightSpecs.push(...group.weights);
        for (const shard of group.paths) {
          shards.push(fs.readFileSync(path.join(modelDir, shard)));
        }
      }
      return {
        modelTopology: manifest.modelTopology,
        format: manifest.format,
        weightSpecs,
        weightData: toArrayBuffer(Buffer.concat(shards)),
      };
    },
  };
}

/** IOHandler writing the same layout; used to persist fixture models. */
export function diskSaveHandler(modelDir: string): tf.io.IOHandler {
  return {
    save: async (artifacts: tf.io.ModelArtifacts) => {
      fs.mkdirSync(modelDir, { recursive: true });
      const manifest = {
        format: 'layers-model',
        modelTopology: artifacts.modelTopology,
        weightsManifest: [
          {
            paths: ['weights.bin'],
            weights: artifacts.weightSpecs,
          },
        ],
      };
      fs.writeFileSync(path.join(modelDir, 'model.json'), JSON.stringify(manifest));
      fs.writeFileSync(
        path.join(modelDir, 'weights.bin'),
        Buffer.from(artifacts.weightData as ArrayBuffer)
      );
      return {
        modelArtifactsInfo: {
          dateSaved: new Date(),
          modelTopologyType: 'JSON' as const,
        },
      };
    },
  };
}

/** SHA-256 over model.json and every weight shard, in manifest order. */
export function modelChecksum(modelDir: string): string {
  const manifestPath = path.join(modelDir, 'model.json');
  const manifestRaw = fs.readFileSync(manifestPath);
  const manifest = JSON.parse(manifestRaw.toString('utf-8'));
  const hash = crypto.createHash('sha256');
  hash.update(manifestRaw);
  for (const group of manifest.weightsManifest) {
    for (const shard of group.paths) {
      hash.update(fs.readFileSync(path.join(modelDir, shard)));
    }
  }
  return hash.digest('hex');
}

export interface LoadedModel {
  model: tf.LayersModel;
  checksum: string;
}

export async function loadSegmentationModel(modelId: string): Promise<LoadedModel> {
  if (/^https?:\/\//.test(modelId)) {
    try {
      const model = await tf.loadLayersModel(modelId);
      return { model, checksum: `url:${modelId}` };
    } catch (err) {
      throw new Error(
        `cannot fetch model from ${modelId}: ${(err as Error).message}. ` +
          'Download the checkpoint once on a networked machine ' +
          '(model.json plus its weight shards), place the files in a local ' +
          'directory, and point "model" at that directory.'
      );
    }
  }
  const manifestPath = path.join(modelId, 'model.json');
  if (!fs.existsSync(manifestPath)) {
    throw new Error(
      `model weights not found: ${manifestPath} does not exist. ` +
        'Fetch a pretrained segmentation checkpoint exported in the ' +
        'TensorFlow.js layers format (model.json + weight shards) and pass ' +
        'its directory as "model" in the adapter config.'
    );
  }
  const model = await tf.loadLayersModel(diskLoadHandler(modelId));
  return { model, checksum: modelChecksum(modelId) };
}
