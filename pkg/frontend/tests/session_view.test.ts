/** Session review screen against the live backend (jsdom DOM). */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError, Session } from "../src/api.js";
import { renderSessionReview, SCORES } from "../src/session_view.js";
import { Backend, silentWav, startBackend, waitFor } from "./helpers/backend.js";

let backend: Backend;
let session: Session;

beforeAll(async () => {
  backend = await startBackend();
  const child = await backend.api.createChild({
    id: "kid-ui", name: "Ana", age_months: 60,
    disorder: "rotacism", therapy_group: "assisted",
  });
  session = await backend.api.uploadSession(
    child.id, "pre_test", backend.sessionWav);
}, 30_000);

afterAll(() => {
  backend?.stop();
});

function mount(): HTMLElement {
  document.body.innerHTML = `<div id="app"></div>`;
  return document.getElementById("app") as HTMLElement;
}

function click(element: Element | null) {
  expect(element, "expected element to exist").toBeTruthy();
  (element as HTMLElement).click();
}

describe("session review", () => {
  it("renders the seeded session's segments", async () => {
    const root = mount();
    await renderSessionReview(root, backend.api, session.id);

    const items = root.querySelectorAll(".segment-item");
    expect(items).toHaveLength(session.segments.length);
    expect(items).toHaveLength(2);

    const player = root.querySelector(".session-player") as HTMLAudioElement;
    expect(player.src).toContain(`/sessions/${session.id}/audio`);
  });

  it("offers exactly the scores 0..3", async () => {
    const root = mount();
    await renderSessionReview(root, backend.api, session.id);
    const buttons = [...root.querySelectorAll(".score-button")];
    expect(buttons.map((b) => (b as HTMLElement).dataset.score))
      .toEqual(["0", "1", "2", "3"]);
    expect(SCORES).toEqual([0, 1, 2, 3]);
  });

  it("scores a segment and the save round-trips through the API", async () => {
    const root = mount();
    const handle = await renderSessionReview(root, backend.api, session.id);
    const save = root.querySelector(".save-button") as HTMLButtonElement;
    expect(save.disabled).toBe(true);

    click(root.querySelector(".segment-item"));
    const soundPicker = root.querySelector(".sound-picker") as HTMLSelectElement;
    soundPicker.value = "r";
    soundPicker.dispatchEvent(new Event("change", { bubbles: true }));
    const probePicker = root.querySelector(".probe-picker") as HTMLSelectElement;
    probePicker.value = "rață";
    click(root.querySelector(".make-association"));
    click(root.querySelector('.score-button[data-score="2"]'));

    expect(handle.hasUnsavedChanges()).toBe(true);
    expect(save.disabled).toBe(false);

    click(save);
    await waitFor(() => !handle.hasUnsavedChanges(), "save to finish");

    const fetched = await backend.api.getSessionSegments(session.id);
    expect(fetched[0].evaluation).toEqual({
      segment_id: session.segments[0].id,
      expected_sound: "r",
      probe: "rață",
      score: 2,
    });
    expect(save.disabled).toBe(true);
    const banner = root.querySelector(".error-banner") as HTMLElement;
    expect(banner.hidden).toBe(true);
  });

  it("shows an empty state with save disabled for a markerless session", async () => {
    const child = await backend.api.createChild({
      name: "Silent", age_months: 50,
      disorder: "sigmatism", therapy_group: "classical",
    });
    const empty = await backend.api.uploadSession(
      child.id, "therapy", silentWav());
    expect(empty.segments).toHaveLength(0);

    const root = mount();
    await renderSessionReview(root, backend.api, empty.id);
    expect(root.querySelector(".empty-state")).toBeTruthy();
    expect((root.querySelector(".save-button") as HTMLButtonElement).disabled)
      .toBe(true);
  });

  it("surfaces API failures inline and never drops edits", async () => {
    const failing = Object.create(backend.api) as ApiClient;
    failing.putEvaluation = () => Promise.reject(
      new ApiError(400, "score_out_of_range", "score 9 outside 0..3"));

    const root = mount();
    const handle = await renderSessionReview(root, failing, session.id);
    click(root.querySelectorAll(".segment-item")[1]);
    const soundPicker = root.querySelector(".sound-picker") as HTMLSelectElement;
    soundPicker.value = "s";
    soundPicker.dispatchEvent(new Event("change", { bubbles: true }));
    (root.querySelector(".probe-picker") as HTMLSelectElement).value = "sare";
    click(root.querySelector(".make-association"));
    click(root.querySelector('.score-button[data-score="1"]'));
    click(root.querySelector(".save-button"));

    const banner = root.querySelector(".error-banner") as HTMLElement;
    await waitFor(() => !banner.hidden, "error banner");
    expect(banner.textContent).toContain("score_out_of_range");
    expect(banner.textContent).toContain("score 9 outside 0..3");
    expect(handle.hasUnsavedChanges()).toBe(true);   // edits kept
  });

  it("discard via refresh restores server state exactly", async () => {
    const root = mount();
    const handle = await renderSessionReview(root, backend.api, session.id);
    click(root.querySelectorAll(".segment-item")[1]);
    click(root.querySelector('.score-button[data-score="3"]'));
    expect(handle.hasUnsavedChanges()).toBe(true);

    await handle.refresh();
    expect(handle.hasUnsavedChanges()).toBe(false);
    // the earlier saved evaluation is still shown after the reload
    const first = root.querySelector(".segment-item") as HTMLElement;
    expect(first.textContent).toContain("2");
  });
});
