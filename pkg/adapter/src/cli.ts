#!/usr/bin/env node
/**
 * egoseg-adapter --images DIR --out DIR --config FILE
 *
 * Exit codes: 0 success (per-image failures are logged and recorded in the
 * run manifest), 2 bad usage or config, 1 fatal runtime error.
 */

import { loadConfig } from './config';
import { inferMasks } from './infer';

function parseArgs(argv: string[]): { images: string; out: string; config: string } {
  const values: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith('--') || value === undefined) {
      throw new Error(`unexpected argument ${flag}`);
    }
    values[flag.slice(2)] = value;
  }
  for (const key of ['images', 'out', 'config']) {
    if (!values[key]) {
      throw new Error(`missing required flag --${key}`);
    }
  }
  return { images: values.images, out: values.out, config: values.config };
}

async function main(): Promise<number> {
  let args;
  let config;
  try {
    args = parseArgs(process.argv.slice(2));
    config = loadConfig(args.config);
  } catch (err) {
    console.error(`egoseg-adapter: ${(err as Error).message}`);
    console.error('usage: egoseg-adapter --images DIR --out DIR --config FILE');
    return 2;
  }
  try {
    const manifest = await inferMasks(args.images, args.out, config);
    console.log(
      `wrote ${manifest.images.length} masks to ${args.out}` +
        (manifest.failures.length ? ` (${manifest.failures.length} failed)` : '')
    );
    return 0;
  } catch (err) {
    console.error(`egoseg-adapter: ${(err as Error).message}`);
    return 1;
  }
}

main().then((code) => {
  process.exitCode = code;
});
