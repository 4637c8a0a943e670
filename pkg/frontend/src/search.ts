import { badgeClass, STAGES } from "./badges.js";
import type { PhotoBody } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface SearchFilters {
  badge?: string;
  name?: string;
}

/** Filter controls plus a result grid of photo cards. */
export function renderSearch(
  doc: Document,
  photos: PhotoBody[],
  filters: SearchFilters,
  onFilter?: (filters: SearchFilters) => void,
): HTMLElement {
  const view = el(doc, "div", "search-view");
  view.appendChild(renderControls(doc, filters, onFilter));

  const grid = el(doc, "div", "result-grid");
  if (!photos.length) {
    grid.appendChild(el(doc, "p", "empty", "No photos match these filters."));
  }
  for (const photo of photos) {
    grid.appendChild(renderCard(doc, photo));
  }
  view.appendChild(grid);
  return view;
}

function renderControls(
  doc: Document,
  filters: SearchFilters,
  onFilter?: (filters: SearchFilters) => void,
): HTMLElement {
  const form = el(doc, "form", "search-controls");
  const name = el(doc, "input", "filter-name");
  name.placeholder = "Identity name";
  name.value = filters.name ?? "";
  form.appendChild(name);

  const badge = el(doc, "select", "filter-badge");
  const any = el(doc, "option", undefined, "Any badge");
  any.value = "";
  badge.appendChild(any);
  for (const stage of STAGES) {
    const option = el(doc, "option", undefined, stage);
    option.value = stage;
    badge.appendChild(option);
  }
  badge.value = filters.badge ?? "";
  form.appendChild(badge);

  const apply = el(doc, "button", "apply", "Search");
  apply.type = "submit";
  form.appendChild(apply);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    onFilter?.({
      badge: badge.value || undefined,
      name: name.value.trim() || undefined,
    });
  });
  return form;
}

function renderCard(doc: Document, photo: PhotoBody): HTMLElement {
  const card = el(doc, "a", "photo-card");
  (card as HTMLAnchorElement).href = `#/photos/${photo.photo_id}`;
  card.setAttribute("data-photo", photo.photo_id);
  const thumb = el(doc, "img", "thumb");
  (thumb as HTMLImageElement).src = photo.image_ref;
  (thumb as HTMLImageElement).alt = photo.photo_id;
  card.appendChild(thumb);
  const winner = photo.identifications[0];
  card.appendChild(
    el(doc, "span", "card-name", winner ? winner.identity.full_name : "Unidentified"),
  );
  card.appendChild(el(doc, "span", badgeClass(photo.stage), photo.stage));
  return card;
}
