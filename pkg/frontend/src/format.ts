/** Display-only formatting. The service's two-decimal money strings are
 * never parsed into floats; grouping is done on the text. */

/** "485930.00" → "485,930.00" (sign preserved, fraction untouched). */
export function groupMoney(money: string): string {
  const match = /^(-?)(\d+)(\.\d+)?$/.exec(money);
  if (!match) return money;
  const [, sign, digits, fraction] = match;
  const grouped = digits.replace(/\B(?=(\d{3})+(?!\d))/g, ",");
  return sign + grouped + (fraction ?? "");
}

/** "12555" or " 12,555 " → 12555; null when not a non-negative integer. */
export function parseUnitsInput(text: string): number | null {
  const cleaned = text.trim().replace(/,/g, "");
  if (!/^\d+$/.test(cleaned)) return null;
  return Number(cleaned);
}

/** "43" / "43.5" / "43.00" → "43.00" / "43.50" / "43.00"; null otherwise.
 * Normalizes to the two-decimal wire form without any arithmetic. */
export function normalizeMoneyInput(text: string): string | null {
  const match = /^(\d+)(?:\.(\d{1,2}))?$/.exec(text.trim().replace(/[$,\s]/g, ""));
  if (!match) return null;
  const [, units, fraction = ""] = match;
  return `${units}.${fraction.padEnd(2, "0")}`;
}
