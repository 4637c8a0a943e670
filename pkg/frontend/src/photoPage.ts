import { badgeClass, categoryIcon, checklist, overlayClass, STAGE_INSTRUCTIONS } from "./badges.js";
import type {
  FeedEntry,
  IdentificationBody,
  PhotoBody,
  ProvenanceSection,
  VoteSummary,
} from "./types.js";

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

function badgeSpan(doc: Document, stage: string, owner: string): HTMLElement {
  const span = el(doc, "span", badgeClass(stage), stage);
  span.setAttribute("data-badge-for", owner);
  return span;
}

/** Vertical photo page: photo and metadata, identity cards in winning order,
 * then the activity feed. */
export function renderPhotoPage(
  doc: Document,
  photo: PhotoBody,
  feed: FeedEntry[],
  onValidate?: (ident: IdentificationBody) => void,
): HTMLElement {
  const page = el(doc, "article", "photo-page");
  page.appendChild(renderHeader(doc, photo));

  const identities = el(doc, "section", "identities");
  identities.appendChild(el(doc, "h2", undefined, "Proposed identities"));
  if (photo.identifications.length === 0) {
    identities.appendChild(
      el(doc, "p", "empty", "No identities proposed yet. This photo needs an ID."),
    );
  }
  for (const ident of photo.identifications) {
    identities.appendChild(renderIdentityCard(doc, ident, onValidate));
  }
  page.appendChild(identities);
  page.appendChild(renderFeed(doc, feed));
  return page;
}

function renderHeader(doc: Document, photo: PhotoBody): HTMLElement {
  const header = el(doc, "header", "photo-header");
  const figure = el(doc, "figure");
  const img = el(doc, "img");
  img.src = photo.image_ref;
  img.alt = `photo ${photo.photo_id}`;
  figure.appendChild(img);
  header.appendChild(figure);

  const title = el(doc, "h1", undefined, `Photo ${photo.photo_id}`);
  title.appendChild(badgeSpan(doc, photo.stage, `photo:${photo.photo_id}`));
  header.appendChild(title);

  const meta = el(doc, "dl", "metadata");
  const rows: [string, string][] = [
    ["Uploader", photo.uploader],
    ["Photo source", photo.photo_source],
    ...Object.entries(photo.tags).map(([k, v]) => [k, v] as [string, string]),
  ];
  for (const [key, value] of rows) {
    meta.appendChild(el(doc, "dt", undefined, key));
    meta.appendChild(el(doc, "dd", undefined, value));
  }
  header.appendChild(meta);
  return header;
}

export function renderIdentityCard(
  doc: Document,
  ident: IdentificationBody,
  onValidate?: (ident: IdentificationBody) => void,
): HTMLElement {
  const card = el(doc, "details", "identity-card");
  card.setAttribute("data-identification", ident.identification_id);

  const summary = el(doc, "summary", "identity-title");
  summary.appendChild(el(doc, "span", "identity-name", ident.identity.full_name));
  summary.appendChild(badgeSpan(doc, ident.stage, ident.identification_id));
  for (const overlay of ident.overlays) {
    summary.appendChild(el(doc, "span", overlayClass(overlay), overlay));
  }
  card.appendChild(summary);

  const body = el(doc, "div", "identity-body");
  const origin =
    ident.origin.kind === "pre-identified"
      ? `Pre-identified (${ident.origin.source.source_type || "unspecified source"})`
      : "Post-identified via photo link";
  body.appendChild(el(doc, "p", "origin", `${origin}, proposed by ${ident.proposer}`));
  if (ident.identity.unit) {
    body.appendChild(el(doc, "p", "unit", ident.identity.unit));
  }
  body.appendChild(renderChecklist(doc, ident.stage));
  body.appendChild(renderVoteChart(doc, ident.votes));
  body.appendChild(renderProvenance(doc, ident.provenance.sections));

  if (onValidate) {
    const button = el(doc, "button", "validate", "Validate this identity");
    button.addEventListener("click", () => onValidate(ident));
    body.appendChild(button);
  }
  card.appendChild(body);
  return card;
}

/** Four-step progression with the current stage highlighted and the
 * instruction for how to proceed. */
export function renderChecklist(doc: Document, stage: string): HTMLElement {
  const wrap = el(doc, "div", "checklist");
  const list = el(doc, "ol", "checklist-steps");
  for (const step of checklist(stage)) {
    const item = el(doc, "li", `step step-${step.state}`, step.stage);
    list.appendChild(item);
  }
  wrap.appendChild(list);
  wrap.appendChild(el(doc, "p", "instruction", STAGE_INSTRUCTIONS[stage] ?? ""));
  return wrap;
}

/** Horizontal count bars over the confidence histogram, then the notes. */
export function renderVoteChart(doc: Document, votes: VoteSummary): HTMLElement {
  const wrap = el(doc, "div", "vote-chart");
  wrap.appendChild(el(doc, "h3", undefined, "Community confidence"));
  const max = Math.max(1, ...Object.values(votes.histogram));
  for (const [verdict, count] of Object.entries(votes.histogram)) {
    const row = el(doc, "div", "vote-row");
    row.appendChild(el(doc, "span", "vote-label", verdict));
    const bar = el(doc, "span", "vote-bar");
    bar.style.width = `${(count / max) * 100}%`;
    bar.setAttribute("data-count", String(count));
    row.appendChild(bar);
    row.appendChild(el(doc, "span", "vote-count", String(count)));
    wrap.appendChild(row);
  }
  const notes = votes.votes.filter((vote) => vote.note);
  if (notes.length) {
    const list = el(doc, "ul", "vote-notes");
    for (const vote of notes) {
      list.appendChild(el(doc, "li", "note", `${vote.voter} (${vote.verdict}): ${vote.note}`));
    }
    wrap.appendChild(list);
  }
  return wrap;
}

/** Identification sources grouped by trust tier, in the order served. */
export function renderProvenance(doc: Document, sections: ProvenanceSection[]): HTMLElement {
  const wrap = el(doc, "div", "provenance");
  wrap.appendChild(el(doc, "h3", undefined, "Identification sources"));
  for (const section of sections) {
    const block = el(doc, "section", "provenance-section");
    block.setAttribute("data-category", section.category);
    block.appendChild(
      el(doc, "h4", undefined, `${categoryIcon(section.category)} ${section.category}`),
    );
    if (!section.entries.length) {
      block.appendChild(el(doc, "p", "empty", "No sources in this tier yet."));
    }
    for (const entry of section.entries) {
      const item = el(doc, "div", `source source-${entry.provenance}`);
      item.appendChild(el(doc, "span", "source-type", entry.source_type || "Unspecified"));
      if (entry.details) item.appendChild(el(doc, "span", "source-details", entry.details));
      item.appendChild(el(doc, "span", "source-photo", `on photo ${entry.source_photo}`));
      item.appendChild(el(doc, "span", "source-user", `identified by ${entry.identified_by}`));
      if (entry.provenance === "linked") {
        item.appendChild(
          el(doc, "span", "source-matcher", `matched by ${entry.matched_by ?? "unknown"}`),
        );
        if (entry.comparison) {
          const counts = Object.entries(entry.comparison.histogram)
            .filter(([, count]) => count > 0)
            .map(([verdict, count]) => `${verdict}: ${count}`)
            .join(", ");
          item.appendChild(el(doc, "span", "source-comparison", counts || "no comparison votes"));
        }
        if (entry.face_rec_support) {
          item.appendChild(
            el(
              doc,
              "span",
              "face-rec face-rec-" + entry.face_rec_support.toLowerCase().replace(/\s+/g, "-"),
              `Facial recognition: ${entry.face_rec_support}`,
            ),
          );
        }
      }
      block.appendChild(item);
    }
    wrap.appendChild(block);
  }
  return wrap;
}

export function renderFeed(doc: Document, feed: FeedEntry[]): HTMLElement {
  const section = el(doc, "section", "activity-feed");
  section.appendChild(el(doc, "h2", undefined, "Activity"));
  const list = el(doc, "ol", "feed-entries");
  for (const entry of feed) {
    list.appendChild(el(doc, "li", "feed-entry", `#${entry.seq} ${entry.line}`));
  }
  section.appendChild(list);
  return section;
}

export function renderNotFound(doc: Document, photoId: string): HTMLElement {
  const page = el(doc, "div", "not-found");
  page.appendChild(el(doc, "h1", undefined, "Photo not found"));
  page.appendChild(el(doc, "p", undefined, `No photo with id ${photoId} exists.`));
  return page;
}

/** Refresh every badge element covered by a write response, in place. */
export function updateBadgeRegions(root: ParentNode, photo: PhotoBody): void {
  const update = (owner: string, stage: string) => {
    const node = root.querySelector(`[data-badge-for="${owner}"]`);
    if (node) {
      node.textContent = stage;
      (node as HTMLElement).className = badgeClass(stage);
    }
  };
  update(`photo:${photo.photo_id}`, photo.stage);
  for (const ident of photo.identifications) {
    update(ident.identification_id, ident.stage);
  }
}
