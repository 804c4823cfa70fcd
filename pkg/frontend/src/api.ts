/** Typed wrappers for the three service endpoints. */

export interface RecognizeResponse {
  label_index: number;
  letter: string;
  outputs: number[];
  glyph: string[];
}

export interface StoreResponse {
  stored: number;
}

export interface ModelInfo {
  n_in: number;
  n_hidden: number;
  n_out: number;
  trained_epochs: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

async function postJson<T>(url: string, body: unknown, fetchImpl: FetchLike): Promise<T> {
  const response = await fetchImpl(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, (payload as { error?: string }).error ?? response.statusText);
  }
  return payload as T;
}

export async function recognize(
  rows: string[],
  base = "",
  fetchImpl: FetchLike = fetch,
): Promise<RecognizeResponse> {
  return postJson(`${base}/recognize`, { glyph: rows }, fetchImpl);
}

export async function submitSample(
  rows: string[],
  labelIndex: number,
  writer = "",
  base = "",
  fetchImpl: FetchLike = fetch,
): Promise<StoreResponse> {
  return postJson(`${base}/samples`, { glyph: rows, label_index: labelIndex, writer }, fetchImpl);
}

export async function modelInfo(base = "", fetchImpl: FetchLike = fetch): Promise<ModelInfo> {
  const response = await fetchImpl(`${base}/model`);
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, (payload as { error?: string }).error ?? response.statusText);
  }
  return payload as ModelInfo;
}
