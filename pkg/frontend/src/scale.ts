/** The 17 legal judgment intensities, strongest to weakest, with the
 * conventional wording shown as picker tooltips. */

export interface ScaleEntry {
  token: string;
  wording: string;
}

const FORWARD: [string, string][] = [
  ['9', 'Extreme importance'],
  ['8', 'Very, very strong'],
  ['7', 'Very strong or demonstrated importance'],
  ['6', 'Strong plus'],
  ['5', 'Strong importance'],
  ['4', 'Moderate plus'],
  ['3', 'Moderate importance'],
  ['2', 'Weak or slight'],
];

export const SCALE_ENTRIES: ScaleEntry[] = [
  ...FORWARD.map(([token, wording]) => ({ token, wording: `${wording} (row over column)` })),
  { token: '1', wording: 'Equal importance' },
  ...FORWARD.slice()
    .reverse()
    .map(([token, wording]) => ({
      token: `1/${token}`,
      wording: `${wording} (column over row)`,
    })),
];

export const SCALE_TOKENS = SCALE_ENTRIES.map((e) => e.token);

/** Reciprocal of a judgment token, by string flipping only ("5" <-> "1/5"). */
export function reciprocalToken(token: string): string {
  if (token === '1') return '1';
  const slash = token.indexOf('/');
  if (slash === -1) return `1/${token}`;
  const denominator = token.slice(slash + 1);
  return denominator === '' ? token : denominator === '1' ? token.slice(0, slash) : denominator;
}

export function isScaleToken(token: string): boolean {
  return SCALE_TOKENS.includes(token);
}
