import type { FeedEntry, NotificationBody, PhotoBody } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(detail);
  }
}

export interface LinkVoteResponse {
  link_id: string;
  photos: PhotoBody[];
}

/** Thin fetch client; every write carries the session actor as a bearer token. */
export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private getActor: () => string = () => "",
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private writeInit(payload: unknown): RequestInit {
    return {
      method: "POST",
      headers: {
        "Content-Type": "application/json",
        Authorization: `Bearer ${this.getActor()}`,
      },
      body: JSON.stringify(payload),
    };
  }

  listPhotos(filters: { badge?: string; name?: string } = {}): Promise<PhotoBody[]> {
    const params = new URLSearchParams();
    if (filters.badge) params.set("badge", filters.badge);
    if (filters.name) params.set("name", filters.name);
    const query = params.toString();
    return this.request(`/photos${query ? "?" + query : ""}`);
  }

  getPhoto(photoId: string): Promise<PhotoBody> {
    return this.request(`/photos/${encodeURIComponent(photoId)}`);
  }

  getFeed(photoId: string): Promise<FeedEntry[]> {
    return this.request(`/photos/${encodeURIComponent(photoId)}/feed`);
  }

  getNotifications(userId: string): Promise<NotificationBody[]> {
    return this.request(`/users/${encodeURIComponent(userId)}/notifications`);
  }

  voteOnLink(linkId: string, verdict: string): Promise<LinkVoteResponse> {
    return this.request(
      `/links/${encodeURIComponent(linkId)}/votes`,
      this.writeInit({ verdict }),
    );
  }

  voteOnIdentification(identId: string, verdict: string, note: string): Promise<PhotoBody> {
    return this.request(
      `/identifications/${encodeURIComponent(identId)}/votes`,
      this.writeInit({ verdict, note }),
    );
  }
}
