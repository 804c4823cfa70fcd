/** Typed wrappers for the three service endpoints. */
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
async function postJson(url, body, fetchImpl) {
    const response = await fetchImpl(url, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
        throw new ApiError(response.status, payload.error ?? response.statusText);
    }
    return payload;
}
export async function recognize(rows, base = "", fetchImpl = fetch) {
    return postJson(`${base}/recognize`, { glyph: rows }, fetchImpl);
}
export async function submitSample(rows, labelIndex, writer = "", base = "", fetchImpl = fetch) {
    return postJson(`${base}/samples`, { glyph: rows, label_index: labelIndex, writer }, fetchImpl);
}
export async function modelInfo(base = "", fetchImpl = fetch) {
    const response = await fetchImpl(`${base}/model`);
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
        throw new ApiError(response.status, payload.error ?? response.statusText);
    }
    return payload;
}
