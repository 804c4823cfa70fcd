/** Pure view-state rules: which actions are allowed when.
 *
 * No request ever leaves the page with an empty glyph: both buttons are
 * gated on ink being present, and submit additionally requires a chosen
 * letter. One in-flight request per action is allowed.
 */
import { hasInk } from "./grid.js";
export function canRecognize(state, flags) {
    return hasInk(state) && !flags.busy;
}
export function canSubmit(state, flags) {
    return hasInk(state) && state.currentLabel !== null && !flags.busy;
}
export function canClear(state, flags) {
    return hasInk(state) && !flags.busy;
}
export function submitHint(state) {
    if (!hasInk(state))
        return "draw a character first";
    if (state.currentLabel === null)
        return "pick the letter you drew";
    return null;
}
