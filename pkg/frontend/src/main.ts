import { ApiClient, ApiError } from "./api.js";
import { renderNotFound, renderPhotoPage, updateBadgeRegions } from "./photoPage.js";
import { renderSearch } from "./search.js";
import { renderWizard } from "./wizard.js";

const api = new ApiClient("", () => sessionStorage.getItem("actor") ?? "");

function mount(): HTMLElement {
  return document.getElementById("app") as HTMLElement;
}

function bindSession(): void {
  const field = document.getElementById("actor") as HTMLInputElement | null;
  if (!field) return;
  field.value = sessionStorage.getItem("actor") ?? "";
  field.addEventListener("change", () => sessionStorage.setItem("actor", field.value.trim()));
}

async function showSearch(params: URLSearchParams): Promise<void> {
  const filters = {
    badge: params.get("badge") ?? undefined,
    name: params.get("name") ?? undefined,
  };
  const photos = await api.listPhotos(filters);
  const view = renderSearch(document, photos, filters, (next) => {
    const query = new URLSearchParams();
    if (next.badge) query.set("badge", next.badge);
    if (next.name) query.set("name", next.name);
    location.hash = `#/search?${query}`;
  });
  mount().replaceChildren(view);
}

async function showPhoto(photoId: string): Promise<void> {
  try {
    const [photo, feed] = await Promise.all([api.getPhoto(photoId), api.getFeed(photoId)]);
    const page = renderPhotoPage(document, photo, feed, (ident) => {
      const wizard = renderWizard(document, ident, api, (updated) => {
        updateBadgeRegions(document, updated);
      });
      const host = document.getElementById("wizard-host") as HTMLElement;
      host.replaceChildren(wizard);
      host.scrollIntoView();
    });
    const host = document.createElement("div");
    host.id = "wizard-host";
    mount().replaceChildren(page, host);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      mount().replaceChildren(renderNotFound(document, photoId));
      return;
    }
    throw err;
  }
}

function route(): void {
  const hash = location.hash || "#/search";
  const [path, query] = hash.slice(1).split("?");
  const parts = path.split("/").filter(Boolean);
  if (parts[0] === "photos" && parts[1]) {
    void showPhoto(decodeURIComponent(parts[1]));
    return;
  }
  void showSearch(new URLSearchParams(query ?? ""));
}

window.addEventListener("hashchange", route);
window.addEventListener("DOMContentLoaded", () => {
  bindSession();
  route();
});
