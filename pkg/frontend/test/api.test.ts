import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { MockServer, loadRecording } from "./mock.js";

const recording = loadRecording();

describe("ApiClient", () => {
  it("fetches the dataset summary", async () => {
    const server = new MockServer();
    const api = new ApiClient("", server.fetch);
    const summary = await api.summary();
    expect(summary).toEqual(recording.summary);
    expect(summary.n_records).toBe(16);
    expect(summary.n_dimensions).toBe(4);
  });

  it("descends by value path", async () => {
    const api = new ApiClient("", new MockServer().fetch);
    const root = await api.descend([]);
    expect(root.count).toBe(16);
    expect(root.dimension).toBe("Locomotion");
    const deeper = await api.descend(["wheels"]);
    expect(deeper).toEqual(recording.descend['["wheels"]']);
  });

  it("recommends for a binding set", async () => {
    const api = new ApiClient("", new MockServer().fetch);
    const rec = await api.recommend({ Locomotion: "wheels" });
    expect(rec).toEqual(recording.recommend['{"Locomotion":"wheels"}']);
  });

  it("surfaces service errors with code and message", async () => {
    const api = new ApiClient("", new MockServer().fetch);
    const failure = api.descend(["wheels", "wheels"]);
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toMatchObject({
      status: 404,
      code: "unknown_value",
    });
  });

  it("keeps a generic message when the error body is not JSON", async () => {
    const broken = async () => new Response("boom", { status: 500 });
    const api = new ApiClient("", broken);
    await expect(api.summary()).rejects.toMatchObject({
      status: 500,
      code: "internal",
    });
  });

  it("prefixes the configured base URL", async () => {
    const server = new MockServer();
    const api = new ApiClient("http://example.test:9", server.fetch);
    await api.summary();
    expect(server.requests[0]?.url).toBe(
      "http://example.test:9/api/dataset/summary",
    );
  });
});
