import { ApiError } from "./api.js";
import { COMPARISON_CHOICES, CONFIDENCE_CHOICES } from "./badges.js";
import type { IdentificationBody, PhotoBody } from "./types.js";

export interface WizardApi {
  voteOnLink(linkId: string, verdict: string): Promise<unknown>;
  voteOnIdentification(identId: string, verdict: string, note: string): Promise<PhotoBody>;
}

export interface LinkedPair {
  linkId: string;
  otherPhoto: string;
}

/** Photos linked to this identification's photo for the same identity. */
export function linkedPairs(ident: IdentificationBody): LinkedPair[] {
  const seen = new Map<string, LinkedPair>();
  for (const section of ident.provenance.sections) {
    for (const entry of section.entries) {
      if (entry.provenance === "linked" && entry.via_link && !seen.has(entry.via_link)) {
        seen.set(entry.via_link, { linkId: entry.via_link, otherPhoto: entry.source_photo });
      }
    }
  }
  return [...seen.values()];
}

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

function radioGroup(doc: Document, name: string, choices: string[]): HTMLElement {
  const group = el(doc, "div", "choices");
  for (const choice of choices) {
    const label = el(doc, "label");
    const input = el(doc, "input");
    input.type = "radio";
    input.name = name;
    input.value = choice;
    label.appendChild(input);
    label.appendChild(doc.createTextNode(" " + choice));
    group.appendChild(label);
  }
  return group;
}

function chosen(root: HTMLElement, name: string): string | null {
  const node = root.querySelector<HTMLInputElement>(`input[name="${name}"]:checked`);
  return node ? node.value : null;
}

/** Two-step validation: compare the linked photos, then vote with a note.
 * The write response carries fresh badges; `onUpdated` receives it so the
 * page can refresh badge regions without a reload. */
export function renderWizard(
  doc: Document,
  ident: IdentificationBody,
  api: WizardApi,
  onUpdated: (photo: PhotoBody) => void,
): HTMLElement {
  const pairs = linkedPairs(ident);
  const root = el(doc, "div", "wizard");
  root.appendChild(
    el(doc, "h2", undefined, `Validate: ${ident.identity.full_name}`),
  );
  const errorBox = el(doc, "p", "error");
  errorBox.hidden = true;
  root.appendChild(errorBox);

  const showError = (err: unknown) => {
    errorBox.hidden = false;
    errorBox.textContent =
      err instanceof ApiError ? `Could not save (${err.status}): ${err.detail}` : String(err);
  };

  const stepOneAnswers = new Map<string, string>();

  const stepTwo = () => {
    const step = el(doc, "section", "wizard-step step-two");
    step.appendChild(el(doc, "h3", undefined, "Step 2: how confident are you in this identity?"));

    if (stepOneAnswers.size) {
      const evidence = el(doc, "aside", "evidence-panel");
      evidence.appendChild(el(doc, "h4", undefined, "Your comparisons"));
      const list = el(doc, "ul");
      for (const pair of pairs) {
        const answer = stepOneAnswers.get(pair.linkId);
        if (answer) {
          list.appendChild(
            el(doc, "li", "evidence-item", `photo ${pair.otherPhoto}: ${answer}`),
          );
        }
      }
      evidence.appendChild(list);
      step.appendChild(evidence);
    }

    step.appendChild(radioGroup(doc, "confidence", CONFIDENCE_CHOICES));
    const note = el(doc, "textarea", "note");
    note.placeholder = "Optional note justifying your decision";
    step.appendChild(note);

    const submit = el(doc, "button", "submit", "Submit vote");
    submit.addEventListener("click", async () => {
      const verdict = chosen(step, "confidence");
      if (!verdict) {
        showError(new Error("Pick a confidence level first."));
        return;
      }
      try {
        const photo = await api.voteOnIdentification(
          ident.identification_id,
          verdict,
          note.value,
        );
        errorBox.hidden = true;
        onUpdated(photo);
        step.replaceChildren(
          el(doc, "p", "done", "Vote recorded. Badges above reflect the new state."),
        );
      } catch (err) {
        showError(err);
      }
    });
    step.appendChild(submit);
    return step;
  };

  if (!pairs.length) {
    // nothing to compare: straight to the confidence vote
    root.appendChild(stepTwo());
    return root;
  }

  const stepOne = el(doc, "section", "wizard-step step-one");
  stepOne.appendChild(
    el(doc, "h3", undefined, "Step 1: do these photos show the same person?"),
  );
  for (const pair of pairs) {
    const block = el(doc, "fieldset", "pair");
    block.setAttribute("data-link", pair.linkId);
    block.appendChild(el(doc, "legend", undefined, `Compare with photo ${pair.otherPhoto}`));
    block.appendChild(radioGroup(doc, `pair-${pair.linkId}`, COMPARISON_CHOICES));
    stepOne.appendChild(block);
  }
  const next = el(doc, "button", "continue", "Continue to confidence vote");
  next.addEventListener("click", async () => {
    try {
      for (const pair of pairs) {
        const verdict = chosen(stepOne, `pair-${pair.linkId}`);
        if (verdict) {
          await api.voteOnLink(pair.linkId, verdict);
          stepOneAnswers.set(pair.linkId, verdict);
        }
      }
      errorBox.hidden = true;
      stepOne.replaceWith(stepTwo());
    } catch (err) {
      showError(err);
    }
  });
  stepOne.appendChild(next);
  root.appendChild(stepOne);
  return root;
}
