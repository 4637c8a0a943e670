// Wire shapes served by the HTTP API. The UI renders these verbatim; badge
// logic lives server-side only.

export interface IdentitySummary {
  identity_id: string;
  full_name: string;
  unit: string;
  biography: string;
  biography_source: string;
}

export interface SourceClaim {
  source_type: string;
  details: string;
}

export type Origin =
  | { kind: "pre-identified"; source: SourceClaim }
  | { kind: "post-identified"; via_link: string };

export interface ComparisonSummary {
  histogram: Record<string, number>;
  relation: string | null;
  agreed_match: boolean;
  match_dispute: boolean;
}

export interface ProvenanceEntry {
  source_photo: string;
  source_type: string;
  subgroup: string;
  details: string;
  identified_by: string;
  provenance: "direct" | "linked";
  matched_by: string | null;
  via_link: string | null;
  comparison: ComparisonSummary | null;
  face_rec_support: string | null;
}

export interface ProvenanceSection {
  category: string;
  trust_rank: number;
  entries: ProvenanceEntry[];
}

export interface VoteEntry {
  voter: string;
  verdict: string;
  note: string;
}

export interface VoteSummary {
  identification_id: string;
  histogram: Record<string, number>;
  votes: VoteEntry[];
  positive_voters: number;
  negative_voters: number;
  unsure_voters: number;
  net_score: number;
  consensus: boolean;
  dispute: boolean;
}

export interface IdentificationBody {
  identification_id: string;
  photo_id: string;
  identity: IdentitySummary;
  origin: Origin;
  proposer: string;
  proposed_seq: number;
  stage: string;
  overlays: string[];
  verified_via: string | null;
  votes: VoteSummary;
  provenance: { identification_id: string; sections: ProvenanceSection[] };
}

export interface PhotoBody {
  photo_id: string;
  uploader: string;
  photo_source: string;
  image_ref: string;
  tags: Record<string, string>;
  uploaded_seq: number;
  uploaded_at: string | null;
  stage: string;
  identifications: IdentificationBody[];
}

export interface FeedEntry {
  photo_id: string;
  seq: number;
  line: string;
  actor: string;
}

export interface NotificationBody {
  recipient: string;
  cause_seq: number;
  message: string;
  read: boolean;
}
