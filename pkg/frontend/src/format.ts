// Readout formatting: six decimals everywhere a solve result is shown.
export function fmt(x: number | null | undefined): string {
  if (x === null || x === undefined || !Number.isFinite(x)) return 'n/a';
  return x.toFixed(6);
}

export function fmtPair(p: [number, number]): string {
  const im = p[1] < 0 ? `- ${fmt(-p[1])}` : `+ ${fmt(p[1])}`;
  return `${fmt(p[0])} ${im}i`;
}
