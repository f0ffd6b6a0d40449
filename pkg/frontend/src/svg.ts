/**
 * Minimal deterministic SVG string building.
 *
 * Figures are assembled from literal strings with fixed two-decimal
 * coordinates, so identical inputs always produce byte-identical output.
 * No timestamps, ids, or environment-dependent values are emitted.
 */

export function fmt(value: number): string {
  const text = value.toFixed(2);
  return text === "-0.00" ? "0.00" : text;
}

export function escapeXml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function svgDocument(width: number, height: number, body: string[]): string {
  const open =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" ` +
    `height="${fmt(height)}" viewBox="0 0 ${fmt(width)} ${fmt(height)}" ` +
    `font-family="sans-serif">`;
  return [open, ...body, "</svg>", ""].join("\n");
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  cls: string,
): string {
  return (
    `<line class="${cls}" x1="${fmt(x1)}" y1="${fmt(y1)}" ` +
    `x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="currentColor"/>`
  );
}

export function rect(
  x: number,
  y: number,
  width: number,
  height: number,
  cls: string,
  fill: string,
): string {
  return (
    `<rect class="${cls}" x="${fmt(x)}" y="${fmt(y)}" ` +
    `width="${fmt(width)}" height="${fmt(height)}" ` +
    `fill="${fill}" stroke="currentColor"/>`
  );
}

export interface TextOptions {
  anchor?: "start" | "middle" | "end";
  size?: number;
  rotate?: number;
}

export function text(
  x: number,
  y: number,
  content: string,
  cls: string,
  options: TextOptions = {},
): string {
  const anchor = options.anchor ?? "middle";
  const size = options.size ?? 12;
  const transform =
    options.rotate === undefined
      ? ""
      : ` transform="rotate(${fmt(options.rotate)} ${fmt(x)} ${fmt(y)})"`;
  return (
    `<text class="${cls}" x="${fmt(x)}" y="${fmt(y)}" ` +
    `text-anchor="${anchor}" font-size="${size}"${transform}>` +
    `${escapeXml(content)}</text>`
  );
}
