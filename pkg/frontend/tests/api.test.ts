/** API client against the live backend. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { Backend, startBackend } from "./helpers/backend.js";

let backend: Backend;

beforeAll(async () => {
  backend = await startBackend();
}, 30_000);

afterAll(() => {
  backend?.stop();
});

describe("children and sessions", () => {
  it("creates a child and uploads a session with segments", async () => {
    const child = await backend.api.createChild({
      id: "kid-api", name: "Ana", age_months: 61,
      disorder: "rotacism", therapy_group: "assisted",
    });
    expect(child.id).toBe("kid-api");

    const session = await backend.api.uploadSession(
      child.id, "pre_test", backend.sessionWav);
    expect(session.segments).toHaveLength(2);
    expect(session.phase).toBe("pre_test");

    const listed = await backend.api.listSessions(child.id);
    expect(listed.map((s) => s.id)).toContain(session.id);
  });

  it("round-trips an evaluation through PUT and read-back", async () => {
    const child = await backend.api.createChild({
      name: "Bogdan", age_months: 55,
      disorder: "sigmatism", therapy_group: "classical",
    });
    const session = await backend.api.uploadSession(
      child.id, "pre_test", backend.sessionWav);
    const segment = session.segments[0];

    const saved = await backend.api.putEvaluation(segment.id, {
      expected_sound: "s", probe: "sare", score: 2,
    });
    expect(saved.score).toBe(2);

    const fetched = await backend.api.getSessionSegments(session.id);
    expect(fetched[0].evaluation).toEqual({
      segment_id: segment.id, expected_sound: "s", probe: "sare", score: 2,
    });
  });

  it("maps unknown ids to coded 404s", async () => {
    const error = await backend.api.getChild("ghost").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(404);
    expect(error.code).toBe("unknown_child");
  });

  it("rejects out-of-range scores with a coded 400", async () => {
    const child = await backend.api.createChild({
      name: "Carla", age_months: 70,
      disorder: "polymorph_dyslalia", therapy_group: "assisted",
    });
    const session = await backend.api.uploadSession(
      child.id, "therapy", backend.sessionWav);
    const error = await backend.api.putEvaluation(session.segments[0].id, {
      expected_sound: "r", probe: "p", score: 4,
    }).catch((e) => e);
    expect(error.status).toBe(400);
    expect(error.code).toBe("score_out_of_range");
  });
});

describe("suggestions and the knowledge base", () => {
  it("computes a suggestion from explicit inputs and applies overrides", async () => {
    const child = await backend.api.createChild({
      name: "Dan", age_months: 66,
      disorder: "rotacism", therapy_group: "classical",
    });
    const suggestion = await backend.api.getSuggestion(
      child.id, { severity: 2, progress: -0.3 });
    expect(suggestion.difficulty).toBeGreaterThanOrEqual(1);
    expect(suggestion.difficulty).toBeLessThanOrEqual(5);
    expect(suggestion.trace.firings.length).toBeGreaterThan(0);

    const result = await backend.api.postOverride(
      suggestion.id, { difficulty: 4.9 });
    expect(result.changes.length).toBeGreaterThan(0);
    for (const change of result.changes) {
      expect(change.new_weight).toBeGreaterThanOrEqual(0);
      expect(change.new_weight).toBeLessThanOrEqual(1);
    }
  });

  it("rejects invalid FCL with a line-anchored error and keeps the base", async () => {
    const before = await backend.api.getKb();
    const error = await backend.api.putKb("FUNCTION_BLOCK broken\n")
      .catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(400);
    expect(error.code).toBe("fcl_syntax");
    expect(error.message).toMatch(/line \d+/);
    expect(await backend.api.getKb()).toBe(before);
  });

  it("accepts a valid replacement base", async () => {
    const text = await backend.api.getKb();
    const summary = await backend.api.putKb(
      text.replace(/FUNCTION_BLOCK \w+/, "FUNCTION_BLOCK tuned"));
    expect(summary.name).toBe("tuned");
    expect(summary.rules).toBe(9);
    await backend.api.putKb(text);   // restore for other tests
  });
});
