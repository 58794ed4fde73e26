// Schematic zone map: every zone is a clickable dot positioned by its
// coordinates.  Clicks snap to the nearest dot when close, otherwise they
// convert back to a latitude/longitude inside the zone bounding box, so a
// click can never produce out-of-range coordinates.

import type { GeoPoint, Zone } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 340;
const HEIGHT = 300;
const PAD = 24;
const SNAP_PX = 14;

interface Projection {
  toX(lon: number): number;
  toY(lat: number): number;
  toLon(x: number): number;
  toLat(y: number): number;
}

function projection(zones: Zone[]): Projection {
  const lats = zones.map((z) => z.latitude);
  const lons = zones.map((z) => z.longitude);
  const latLo = Math.min(...lats) - 0.3;
  const latHi = Math.max(...lats) + 0.3;
  const lonLo = Math.min(...lons) - 0.3;
  const lonHi = Math.max(...lons) + 0.3;
  const innerW = WIDTH - 2 * PAD;
  const innerH = HEIGHT - 2 * PAD;
  return {
    toX: (lon) => PAD + ((lon - lonLo) / (lonHi - lonLo)) * innerW,
    toY: (lat) => PAD + (1 - (lat - latLo) / (latHi - latLo)) * innerH,
    toLon: (x) => lonLo + ((x - PAD) / innerW) * (lonHi - lonLo),
    toLat: (y) => latLo + (1 - (y - PAD) / innerH) * (latHi - latLo),
  };
}

export function renderMap(container: HTMLElement, zones: Zone[],
  onPick: (point: GeoPoint, zoneName: string | null) => void): void {
  const proj = projection(zones);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "zone-map");
  svg.setAttribute("data-testid", "zone-map");

  const frame = document.createElementNS(SVG_NS, "rect");
  frame.setAttribute("x", "1");
  frame.setAttribute("y", "1");
  frame.setAttribute("width", String(WIDTH - 2));
  frame.setAttribute("height", String(HEIGHT - 2));
  frame.setAttribute("class", "map-frame");
  svg.appendChild(frame);

  for (const zone of zones) {
    const cx = proj.toX(zone.longitude);
    const cy = proj.toY(zone.latitude);
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", cx.toFixed(1));
    dot.setAttribute("cy", cy.toFixed(1));
    dot.setAttribute("r", "6");
    dot.setAttribute("class", "map-dot");
    dot.setAttribute("data-zone", zone.sub_district);
    const label = document.createElementNS(SVG_NS, "title");
    label.textContent = `${zone.sub_district} (${zone.latitude}, ${zone.longitude})`;
    dot.appendChild(label);
    dot.addEventListener("click", (ev) => {
      ev.stopPropagation();
      onPick({ lat: zone.latitude, lon: zone.longitude }, zone.sub_district);
    });
    svg.appendChild(dot);

    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", (cx + 8).toFixed(1));
    text.setAttribute("y", (cy + 3).toFixed(1));
    text.setAttribute("class", "map-label");
    text.textContent = zone.sub_district;
    svg.appendChild(text);
  }

  svg.addEventListener("click", (ev) => {
    const rect = svg.getBoundingClientRect();
    const scaleX = rect.width > 0 ? WIDTH / rect.width : 1;
    const scaleY = rect.height > 0 ? HEIGHT / rect.height : 1;
    const px = (ev.clientX - rect.left) * scaleX;
    const py = (ev.clientY - rect.top) * scaleY;
    // snap to the nearest zone when the click lands close to a dot
    let best: Zone | null = null;
    let bestDist = Infinity;
    for (const zone of zones) {
      const d = Math.hypot(proj.toX(zone.longitude) - px, proj.toY(zone.latitude) - py);
      if (d < bestDist) {
        bestDist = d;
        best = zone;
      }
    }
    if (best && bestDist <= SNAP_PX) {
      onPick({ lat: best.latitude, lon: best.longitude }, best.sub_district);
      return;
    }
    const lat = Math.min(90, Math.max(-90, proj.toLat(py)));
    const lon = Math.min(180, Math.max(-180, proj.toLon(px)));
    onPick({ lat, lon }, null);
  });

  container.replaceChildren(svg);
}
