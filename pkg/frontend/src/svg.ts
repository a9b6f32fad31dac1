import { scaleLinear, type ScaleLinear } from "d3";

export type Scale = ScaleLinear<number, number>;

const fmt = (x: number): string => {
  const rounded = Math.round(x * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
};

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  x: Scale;
  y: Scale;
}

export function makeFrame(
  xDomain: [number, number],
  yDomain: [number, number],
  width = 640,
  height = 480,
  rightMargin = 24,
): Frame {
  const margin = { top: 36, right: rightMargin, bottom: 48, left: 64 };
  const x = scaleLinear().domain(xDomain).range([margin.left, width - margin.right]).nice();
  const y = scaleLinear().domain(yDomain).range([height - margin.bottom, margin.top]).nice();
  return { width, height, margin, x, y };
}

/** Plain string-building SVG document; deterministic output. */
export class SvgDocument {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  push(fragment: string): void {
    this.parts.push(fragment);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
    this.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"${extra}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, fill: string, opacity = 0.75): void {
    this.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}" fill-opacity="${opacity}"/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, dash = "", width = 1.5): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  polyline(points: [number, number][], stroke: string, width = 2, dash = ""): void {
    const attr = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.push(`<polyline points="${attr}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`);
  }

  text(x: number, y: number, content: string, anchor = "middle", size = 12, extra = ""): void {
    this.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" font-size="${size}" font-family="sans-serif"${extra}>${escapeXml(content)}</text>`,
    );
  }

  axes(frame: Frame, xLabel: string, yLabel: string, title: string): void {
    const { x, y, width, height, margin } = frame;
    const bottom = height - margin.bottom;
    this.line(margin.left, bottom, width - margin.right, bottom, "#000", "", 1);
    this.line(margin.left, margin.top, margin.left, bottom, "#000", "", 1);
    for (const tick of x.ticks(6)) {
      const px = x(tick);
      this.line(px, bottom, px, bottom + 5, "#000", "", 1);
      this.text(px, bottom + 18, fmt(tick));
    }
    for (const tick of y.ticks(6)) {
      const py = y(tick);
      this.line(margin.left - 5, py, margin.left, py, "#000", "", 1);
      this.text(margin.left - 8, py + 4, fmt(tick), "end");
    }
    this.text((margin.left + width - margin.right) / 2, height - 10, xLabel);
    this.push(
      `<g transform="translate(16,${(margin.top + bottom) / 2}) rotate(-90)"><text text-anchor="middle" font-size="12" font-family="sans-serif">${escapeXml(yLabel)}</text></g>`,
    );
    this.text((margin.left + width - margin.right) / 2, 20, title, "middle", 14);
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">` +
      `<rect width="${this.width}" height="${this.height}" fill="#ffffff"/>` +
      this.parts.join("") +
      `</svg>`
    );
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function colorBar(
  doc: SvgDocument,
  frame: Frame,
  colorOf: (t: number) => string,
  low: string,
  high: string,
): void {
  const x0 = frame.width - frame.margin.right + 10;
  const top = frame.margin.top;
  const bottom = frame.height - frame.margin.bottom;
  const steps = 40;
  const h = (bottom - top) / steps;
  for (let i = 0; i < steps; i += 1) {
    const t = 1 - i / (steps - 1);
    doc.rect(x0, top + i * h, 14, h + 0.5, colorOf(t));
  }
  doc.text(x0 + 7, top - 6, high);
  doc.text(x0 + 7, bottom + 16, low);
}
