/** Display formatting for server-provided numbers. Formatting only: every
 * value passed in must originate from an API payload. */

export function fmt(value: number): string {
  return value.toFixed(3);
}

export function fmtPercent(fraction: number): string {
  return `${(fraction * 100).toFixed(1)}%`;
}

export function fmtCr(cr: number | null): string {
  return cr === null ? 'n/a' : cr.toFixed(4);
}

export function fmtWeight(value: number): string {
  return value.toFixed(4);
}
