/** Pure view-state rules: which actions are allowed when.
 *
 * No request ever leaves the page with an empty glyph: both buttons are
 * gated on ink being present, and submit additionally requires a chosen
 * letter. One in-flight request per action is allowed.
 */

import { CanvasState, hasInk } from "./grid.js";

export interface UiFlags {
  busy: boolean;
}

export function canRecognize(state: CanvasState, flags: UiFlags): boolean {
  return hasInk(state) && !flags.busy;
}

export function canSubmit(state: CanvasState, flags: UiFlags): boolean {
  return hasInk(state) && state.currentLabel !== null && !flags.busy;
}

export function canClear(state: CanvasState, flags: UiFlags): boolean {
  return hasInk(state) && !flags.busy;
}

export function submitHint(state: CanvasState): string | null {
  if (!hasInk(state)) return "draw a character first";
  if (state.currentLabel === null) return "pick the letter you drew";
  return null;
}
