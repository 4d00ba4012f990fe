// Timeline state for a survey session. Pure data and transitions so tests
// can drive it without a DOM. Scores are immutable once recorded; only the
// badge (novel vs similar) changes when the operator moves the threshold.

import { ApiVerdict, ReportEntry } from './api.js';

export interface Card {
  imageId: number;
  name: string;
  score: number;
  verdict: 'novel' | 'similar';
  bestMatchId: number | null;
  pairUrl: string | null;
}

export class Timeline {
  cards: Card[] = [];

  addFromVerdict(verdict: ApiVerdict, name: string): Card {
    const card: Card = {
      imageId: verdict.image_id,
      name,
      score: verdict.score,
      verdict: verdict.verdict,
      bestMatchId: verdict.best_match_id,
      pairUrl: verdict.pair_url,
    };
    this.cards.push(card);
    return card;
  }

  // Re-badge every card from a freshly fetched report. The report is the
  // authority: the service recomputes verdicts from stored scores, so this
  // never touches score or pair fields.
  rebadge(entries: ReportEntry[]): void {
    const byId = new Map(entries.map((e) => [e.image_id, e]));
    for (const card of this.cards) {
      const entry = byId.get(card.imageId);
      if (entry) card.verdict = entry.verdict;
    }
  }

  get novelCount(): number {
    return this.cards.filter((c) => c.verdict === 'novel').length;
  }

  get similarCount(): number {
    return this.cards.filter((c) => c.verdict === 'similar').length;
  }
}
