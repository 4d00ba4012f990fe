// Integration tests against a live service instance. The suite boots the
// Python service on a free port, pushes three fixture images through the
// client, and checks that the timeline mirrors the report exactly and that
// re-thresholding never triggers new score computation on the wire.

import { spawn, ChildProcess } from 'node:child_process';
import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { SessionClient } from '../src/api.js';
import { formatScore, renderCard, renderTimeline } from '../src/render.js';
import { Timeline } from '../src/timeline.js';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');
const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${BASE}/sessions`, { method: 'POST' });
      if (res.status === 201) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error('service did not start');
}

beforeAll(async () => {
  server = spawn(
    'python3',
    ['-m', 'uvicorn', 'outcrop.service:create_app', '--factory',
     '--host', '127.0.0.1', '--port', String(PORT), '--log-level', 'warning'],
    { stdio: 'inherit' },
  );
  await waitForServer();
}, 30_000);

afterAll(() => {
  server.kill();
});

function fixture(name: string): Uint8Array {
  return new Uint8Array(readFileSync(join(FIXTURES, name)));
}

describe('survey console against a live service', () => {
  it('timeline cards match the session report', async () => {
    const client = new SessionClient(BASE);
    const timeline = new Timeline();
    await client.createSession(40);

    for (const name of ['stripes_a.png', 'stripes_b.png', 'stripes_a_copy.png']) {
      const verdict = await client.uploadImage(fixture(name), name);
      timeline.addFromVerdict(verdict, name);
    }

    expect(timeline.cards).toHaveLength(3);
    const [seed, sibling, duplicate] = timeline.cards;
    expect(seed.verdict).toBe('novel');
    expect(seed.score).toBe(0);
    expect(seed.bestMatchId).toBeNull();
    expect(sibling.verdict).toBe('similar');
    expect(sibling.score).toBeGreaterThan(40);
    expect(sibling.score).toBeLessThan(100);
    expect(duplicate.verdict).toBe('similar');
    expect(duplicate.score).toBe(100);
    expect(duplicate.bestMatchId).toBe(seed.imageId);

    const report = await client.fetchReport();
    expect(report.entries).toHaveLength(3);
    for (const [i, entry] of report.entries.entries()) {
      expect(timeline.cards[i].imageId).toBe(entry.image_id);
      expect(timeline.cards[i].score).toBe(entry.score);
      expect(timeline.cards[i].verdict).toBe(entry.verdict);
      expect(timeline.cards[i].bestMatchId).toBe(entry.best_match_id);
    }
    expect(report.novel_count).toBe(timeline.novelCount);
    expect(report.similar_count).toBe(timeline.similarCount);
  });

  it('threshold 100 re-badges non-duplicates novel without new score computation', async () => {
    let postCount = 0;
    const countingFetch: typeof fetch = (input, init) => {
      if ((init?.method ?? 'GET') === 'POST') postCount++;
      return fetch(input, init);
    };
    const client = new SessionClient(BASE, countingFetch);
    const timeline = new Timeline();
    await client.createSession(40);
    for (const name of ['stripes_a.png', 'stripes_b.png', 'stripes_a_copy.png']) {
      timeline.addFromVerdict(await client.uploadImage(fixture(name), name), name);
    }
    const postsAfterUploads = postCount;

    const report = await client.fetchReport(100);
    timeline.rebadge(report.entries);

    // Only the exact duplicate scores 100; at threshold 100 everything else
    // flips to novel. Scores themselves are untouched.
    const [seed, sibling, duplicate] = timeline.cards;
    expect(seed.verdict).toBe('novel');
    expect(sibling.verdict).toBe('novel');
    expect(duplicate.verdict).toBe('similar');
    expect(sibling.score).toBeGreaterThan(40);
    expect(timeline.novelCount).toBe(2);

    // Re-thresholding is a GET over stored scores; no new POSTs happened.
    expect(postCount).toBe(postsAfterUploads);
  });

  it('rejects a non-image payload with 415', async () => {
    const client = new SessionClient(BASE);
    await client.createSession();
    await expect(
      client.uploadImage(new TextEncoder().encode('not an image'), 'junk.png'),
    ).rejects.toMatchObject({ status: 415 });
  });
});

describe('rendering', () => {
  it('captions carry the score with four decimals', () => {
    const html = renderCard({
      imageId: 2,
      name: 'b.png',
      score: 57.25,
      verdict: 'similar',
      bestMatchId: 1,
      pairUrl: '/sessions/s/pairs/2',
    });
    expect(html).toContain('Similarity = 57.2500%');
    expect(html).toContain('badge-similar');
    expect(html).toContain('best match: image 1');
  });

  it('escapes hostile file names', () => {
    const html = renderCard({
      imageId: 1,
      name: '<script>alert(1)</script>.png',
      score: 0,
      verdict: 'novel',
      bestMatchId: null,
      pairUrl: null,
    });
    expect(html).not.toContain('<script>');
    expect(html).toContain('&lt;script&gt;');
  });

  it('empty timeline renders a hint', () => {
    expect(renderTimeline([])).toContain('No images yet');
  });

  it('formatScore pins four decimals', () => {
    expect(formatScore(100)).toBe('100.0000');
    expect(formatScore(57.1234)).toBe('57.1234');
  });
});
