// Dependency-free SVG line charts for the twelve forecast months.

const SVG_NS = "http://www.w3.org/2000/svg";
const MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun",
  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"];

const WIDTH = 340;
const HEIGHT = 150;
const PAD = { left: 44, right: 10, top: 14, bottom: 22 };

function el<K extends keyof SVGElementTagNameMap>(
  tag: K, attrs: Record<string, string>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function lineChart(title: string, unit: string, values: number[]): SVGSVGElement {
  const svg = el("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "chart",
    role: "img",
    "data-chart": title,
  });
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  const innerW = WIDTH - PAD.left - PAD.right;
  const innerH = HEIGHT - PAD.top - PAD.bottom;
  const x = (i: number) => PAD.left + (i / 11) * innerW;
  const y = (v: number) => PAD.top + (1 - (v - lo) / span) * innerH;

  const caption = el("text", { x: String(PAD.left), y: "10", class: "chart-title" });
  caption.textContent = `${title} (${unit})`;
  svg.appendChild(caption);

  // axis labels carry the actual series extremes, nothing derived
  const hiLabel = el("text", { x: "2", y: String(y(hi) + 4), class: "chart-axis" });
  hiLabel.textContent = String(hi);
  const loLabel = el("text", { x: "2", y: String(y(lo) + 4), class: "chart-axis" });
  loLabel.textContent = String(lo);
  svg.appendChild(hiLabel);
  svg.appendChild(loLabel);

  const path = values.map((v, i) => `${i ? "L" : "M"}${x(i).toFixed(1)},${y(v).toFixed(1)}`);
  svg.appendChild(el("path", { d: path.join(" "), class: "chart-line" }));

  values.forEach((v, i) => {
    const dot = el("circle", {
      cx: x(i).toFixed(1), cy: y(v).toFixed(1), r: "2.5",
      class: "chart-dot", "data-month": MONTHS[i], "data-value": String(v),
    });
    const tooltip = el("title", {});
    tooltip.textContent = `${MONTHS[i]}: ${String(v)}`;
    dot.appendChild(tooltip);
    svg.appendChild(dot);
  });

  for (const i of [0, 5, 11]) {
    const label = el("text", {
      x: x(i).toFixed(1), y: String(HEIGHT - 6), class: "chart-axis",
      "text-anchor": "middle",
    });
    label.textContent = MONTHS[i];
    svg.appendChild(label);
  }
  return svg;
}

export function renderCharts(container: HTMLElement, weather: {
  temperature: number[]; rainfall: number[]; humidity: number[];
}): void {
  container.replaceChildren(
    lineChart("Temperature", "°C", weather.temperature),
    lineChart("Rainfall", "mm", weather.rainfall),
    lineChart("Humidity", "%", weather.humidity),
  );
}
