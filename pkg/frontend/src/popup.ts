/**
 * Block popups: a modal sibling list for one breadcrumb block.
 *
 * The first block's popup additionally appends the mode-selector entries,
 * which is how modes are switched manually.
 */

import { BreadcrumbMode, MODE_CYCLE, PopupItem, PopupState } from "./state.js";

export interface SiblingEntry {
  label: string;
  isOpenDocument?: boolean;
  marks?: PopupItem["marks"];
}

/** Open documents first in MRU order, then the rest alphabetically. */
export function orderSiblings(
  entries: SiblingEntry[],
  openOrder: string[],
): SiblingEntry[] {
  const rank = new Map(openOrder.map((label, index) => [label, index]));
  const opened = entries
    .filter((entry) => rank.has(entry.label))
    .sort((a, b) => rank.get(a.label)! - rank.get(b.label)!);
  const rest = entries
    .filter((entry) => !rank.has(entry.label))
    .sort((a, b) => (a.label < b.label ? -1 : a.label > b.label ? 1 : 0));
  return [...opened, ...rest];
}

export function openBlockPopup(options: {
  blockLabel: string;
  siblings: SiblingEntry[];
  openOrder?: string[];
  isFirstBlock?: boolean;
  currentMode?: BreadcrumbMode;
}): PopupState {
  const ordered = orderSiblings(options.siblings, options.openOrder ?? []);
  const items: PopupItem[] = ordered.map((entry) => ({
    label: entry.label,
    marks: entry.marks,
  }));
  if (options.isFirstBlock) {
    for (const mode of MODE_CYCLE) {
      const current = mode === options.currentMode ? " (current)" : "";
      items.push({ label: `mode: ${mode}${current}`, mode });
    }
  }
  const selected = Math.max(
    0,
    items.findIndex((item) => item.label === options.blockLabel),
  );
  return { title: options.blockLabel, items, selected };
}
