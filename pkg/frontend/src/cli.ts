/**
 * Usage: node dist/cli.js <fig2|fig3|fig4> <input.csv> <output.svg>
 *
 * Exit codes: 0 rendered, 2 usage error, 1 read/schema/render failure.
 */

import { FIGURE_IDS, FigureId } from "./figures.js";
import { renderFigureFile } from "./render.js";

export function run(argv: string[]): number {
  if (argv.length !== 3) {
    console.error("usage: render <fig2|fig3|fig4> <input.csv> <output.svg>");
    return 2;
  }
  const [id, input, output] = argv;
  if (!FIGURE_IDS.includes(id as FigureId)) {
    console.error(`unknown figure id "${id}", expected one of ${FIGURE_IDS.join(", ")}`);
    return 2;
  }
  try {
    renderFigureFile(id as FigureId, input, output);
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
  console.log(`rendered ${id} from ${input} to ${output}`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(run(process.argv.slice(2)));
}
