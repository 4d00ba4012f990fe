// Browser entry point. Wires the upload control and threshold slider to the
// session service. Uploads run one at a time because each verdict depends on
// everything ingested before it.

import { SessionClient } from './api.js';
import { renderCounts, renderTimeline } from './render.js';
import { Timeline } from './timeline.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function start(): Promise<void> {
  const client = new SessionClient('');
  const timeline = new Timeline();

  const fileInput = el<HTMLInputElement>('file-input');
  const slider = el<HTMLInputElement>('threshold');
  const sliderValue = el<HTMLSpanElement>('threshold-value');
  const counts = el<HTMLSpanElement>('counts');
  const container = el<HTMLDivElement>('timeline');
  const status = el<HTMLSpanElement>('status');

  await client.createSession(Number(slider.value));
  status.textContent = `session ${client.sessionId}`;

  function redraw(): void {
    container.innerHTML = renderTimeline(timeline.cards);
    counts.textContent = renderCounts(timeline.novelCount, timeline.similarCount);
  }
  redraw();

  let queue: Promise<void> = Promise.resolve();

  fileInput.addEventListener('change', () => {
    const files = Array.from(fileInput.files ?? []);
    fileInput.value = '';
    for (const file of files) {
      queue = queue.then(async () => {
        status.textContent = `analyzing ${file.name}...`;
        try {
          const verdict = await client.uploadImage(await file.arrayBuffer(), file.name);
          timeline.addFromVerdict(verdict, file.name);
          status.textContent = `${file.name}: ${verdict.verdict} in ${verdict.elapsed_ms} ms`;
        } catch (err) {
          status.textContent = `${file.name}: ${err instanceof Error ? err.message : err}`;
        }
        redraw();
      });
    }
  });

  // Moving the slider only re-reads stored scores on the server side; no
  // image is recompressed. The report response is the single authority for
  // badges after a threshold change.
  slider.addEventListener('input', () => {
    sliderValue.textContent = slider.value;
  });
  slider.addEventListener('change', () => {
    queue = queue.then(async () => {
      const report = await client.fetchReport(Number(slider.value));
      timeline.rebadge(report.entries);
      redraw();
      status.textContent = `threshold ${report.threshold}%`;
    });
  });
}

start().catch((err) => {
  const status = document.getElementById('status');
  if (status) status.textContent = `failed to start: ${err}`;
});
