// HTML rendering for timeline cards. String templates only, no framework;
// the host page swaps innerHTML of the timeline container.

import { Card } from './timeline.js';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function formatScore(score: number): string {
  return score.toFixed(4);
}

export function renderCard(card: Card): string {
  const badgeClass = card.verdict === 'novel' ? 'badge-novel' : 'badge-similar';
  const badgeText = card.verdict === 'novel' ? 'NOVEL' : 'SIMILAR';
  const caption =
    card.bestMatchId === null
      ? 'First image of the session'
      : `Similarity = ${formatScore(card.score)}% (best match: image ${card.bestMatchId})`;
  const pair = card.pairUrl
    ? `<img class="pair" src="${escapeHtml(card.pairUrl)}" alt="incoming image beside its best match">`
    : '';
  return `
    <article class="card" data-image-id="${card.imageId}">
      <header>
        <span class="badge ${badgeClass}">${badgeText}</span>
        <span class="name">${escapeHtml(card.name)}</span>
      </header>
      ${pair}
      <p class="caption">${escapeHtml(caption)}</p>
    </article>`;
}

export function renderTimeline(cards: Card[]): string {
  if (cards.length === 0) {
    return '<p class="empty">No images yet. Drop a PNG or JPEG above to start.</p>';
  }
  return cards.map(renderCard).join('\n');
}

export function renderCounts(novel: number, similar: number): string {
  return `${novel} novel, ${similar} similar`;
}
