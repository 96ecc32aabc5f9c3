import * as fs from 'fs';
import { z } from 'zod';

export const AdapterConfigSchema = z.object({
  /** local directory containing model.json + weight shards, or an http(s) URL */
  model: z.string().min(1),
  /** index of the person/people channel in the model's output */
  personClassIndex: z.number().int().min(0),
  /** inputs are scaled so their longest side equals this before the forward pass */
  resizeLongestSide: z.number().int().min(8),
  /** person-class probability at or above which a pixel becomes foreground */
  threshold: z.number().min(0).max(1),
});

export type AdapterConfig = z.infer<typeof AdapterConfigSchema>;

export function loadConfig(path: string): AdapterConfig {
  let raw: string;
  try {
    raw = fs.readFileSync(path, 'utf-8');
  } catch (err) {
    throw new Error(`cannot read config file ${path}: ${(err as Error).message}`);
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(raw);
  } catch (err) {
    throw new Error(`config file ${path} is not valid JSON: ${(err as Error).message}`);
  }
  const result = AdapterConfigSchema.safeParse(parsed);
  if (!result.success) {
    const issues = result.error.issues
      .map((i) => `${i.path.join('.') || '(root)'}: ${i.message}`)
      .join('; ');
    throw new Error(`invalid adapter config ${path}: ${issues}`);
  }
  return result.data;
}
