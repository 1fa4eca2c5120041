import { FigureManifest, FigureManifestSchema } from "../src/schemas.js";

const XML_UNESCAPES: Record<string, string> = {
  "&amp;": "&",
  "&lt;": "<",
  "&gt;": ">",
  "&quot;": '"',
};

export function manifestFromSvg(svg: string): FigureManifest {
  const match = svg.match(/<metadata id="figure-data">([\s\S]*?)<\/metadata>/);
  if (!match) throw new Error("no figure-data metadata block in SVG");
  const json = match[1].replace(/&amp;|&lt;|&gt;|&quot;/g, (e) => XML_UNESCAPES[e]);
  return FigureManifestSchema.parse(JSON.parse(json));
}

export function countMatches(svg: string, pattern: RegExp): number {
  return [...svg.matchAll(new RegExp(pattern, "g"))].length;
}
