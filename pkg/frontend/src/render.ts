// Recommendation table, disease badges, and status banners.  Every number
// shown is the exact string form of an API response field.

import type { CropAssessment, Recommendation } from "./types";

export function renderError(banner: HTMLElement, code: string, message: string,
  onRetry: (() => void) | null): void {
  banner.hidden = false;
  banner.replaceChildren();
  const text = document.createElement("span");
  text.className = "error-text";
  text.textContent = `[${code}] ${message}`;
  banner.appendChild(text);
  if (onRetry) {
    const retry = document.createElement("button");
    retry.textContent = "Retry";
    retry.className = "retry-button";
    retry.addEventListener("click", onRetry);
    banner.appendChild(retry);
  }
}

export function clearError(banner: HTMLElement): void {
  banner.hidden = true;
  banner.replaceChildren();
}

function diseaseBadges(assessment: CropAssessment): HTMLElement {
  const cell = document.createElement("td");
  cell.className = "diseases";
  if (assessment.diseases.length === 0) {
    const badge = document.createElement("span");
    badge.className = "badge badge-healthy";
    badge.textContent = "no disease";
    cell.appendChild(badge);
    return cell;
  }
  for (const disease of assessment.diseases) {
    const badge = document.createElement("span");
    badge.className = "badge badge-disease";
    badge.textContent = disease;
    cell.appendChild(badge);
  }
  return cell;
}

export function renderRanking(container: HTMLElement, rec: Recommendation,
  primaryCrops: string[], exclusions: Set<string>,
  onToggle: (crop: string) => void): void {
  container.replaceChildren();

  const heading = document.createElement("h2");
  heading.textContent = `Final crops list — ${rec.zone.sub_district}`;
  container.appendChild(heading);

  if (primaryCrops.length > 0) {
    const toggles = document.createElement("div");
    toggles.className = "exclusions";
    for (const crop of primaryCrops) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = !exclusions.has(crop);
      box.dataset.crop = crop;
      box.addEventListener("change", () => onToggle(crop));
      label.appendChild(box);
      label.appendChild(document.createTextNode(crop));
      toggles.appendChild(label);
    }
    container.appendChild(toggles);
  }

  if (rec.ranked.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No crops to rank — every primary crop is excluded.";
    container.appendChild(empty);
    return;
  }

  const table = document.createElement("table");
  table.className = "ranking";
  const head = document.createElement("tr");
  for (const title of ["Final Order", "Crop", "Production (ton/hectare)", "Disease"]) {
    const th = document.createElement("th");
    th.textContent = title;
    head.appendChild(th);
  }
  table.appendChild(head);

  rec.ranked.forEach((assessment, i) => {
    const row = document.createElement("tr");
    row.className = "crop-row";
    row.dataset.crop = assessment.crop;
    const order = document.createElement("td");
    order.textContent = String(i + 1);
    const crop = document.createElement("td");
    crop.textContent = assessment.crop;
    const production = document.createElement("td");
    production.className = "production";
    production.textContent = String(assessment.predicted_production);
    row.append(order, crop, production, diseaseBadges(assessment));
    table.appendChild(row);
  });
  container.appendChild(table);
}
