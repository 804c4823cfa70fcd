/** The 32 letters of the Farsi alphabet, alef first, matching the server's
 * label indices exactly. */

export interface Letter {
  index: number;
  display: string;
  name: string;
}

const DISPLAYS =
  "ا ب پ ت ث ج چ ح خ د " +
  "ذ ر ز ژ س ش ص ض ط ظ " +
  "ع غ ف ق ک گ ل م ن و " +
  "ه ی";

const NAMES =
  "alef be pe te se jim che hejimi khe dal zal re ze zhe sin shin sad zad " +
  "ta za eyn gheyn fe qaf kaf gaf lam mim nun vav he ye";

export const ALPHABET: Letter[] = DISPLAYS.split(" ").map((display, index) => ({
  index,
  display,
  name: NAMES.split(" ")[index],
}));
