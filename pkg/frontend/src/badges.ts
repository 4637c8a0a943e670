// Static presentation mappings for the badge pipeline. Stage values come
// from the API; nothing here recomputes badge logic.

export const STAGES = ["Needs Tags", "Needs ID", "Needs Verification", "Verified ID"] as const;

export const STAGE_INSTRUCTIONS: Record<string, string> = {
  "Needs Tags": "Add the required photo and uniform tags to move this photo forward.",
  "Needs ID": "Propose an identity to start verification.",
  "Needs Verification":
    "Review the sources below and cast a confidence vote to help verify or debunk this identity.",
  "Verified ID": "This identity is verified. New evidence and votes are still recorded.",
};

export interface ChecklistStep {
  stage: string;
  state: "done" | "current" | "upcoming";
}

/** The four-step progression with the given stage highlighted. */
export function checklist(currentStage: string): ChecklistStep[] {
  const position = STAGES.indexOf(currentStage as (typeof STAGES)[number]);
  return STAGES.map((stage, index) => ({
    stage,
    state: index < position ? "done" : index === position ? "current" : "upcoming",
  }));
}

// One icon per trust tier (not per source type).
const CATEGORY_ICONS: Record<string, string> = {
  Primary: "\u{1F4DC}", // scroll
  "Secondary (Scholarly)": "\u{1F3DB}\u{FE0F}", // classical building
  "Secondary (Non-Scholarly)": "\u{1F4AC}", // speech balloon
};

export function categoryIcon(category: string): string {
  return CATEGORY_ICONS[category] ?? "";
}

export function badgeClass(stage: string): string {
  return "badge badge-" + stage.toLowerCase().replace(/\s+/g, "-");
}

export function overlayClass(overlay: string): string {
  return "overlay overlay-" + overlay.toLowerCase().replace(/\s+/g, "-");
}

export const COMPARISON_CHOICES = ["Replica", "Facial Match", "Not Sure", "Different People"];

export const CONFIDENCE_CHOICES = [
  "Yes - Highly Confident",
  "Yes - Slightly Confident",
  "Not Sure",
  "No - Slightly Confident",
  "No - Highly Confident",
];
