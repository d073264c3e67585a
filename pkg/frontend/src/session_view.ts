/** Session review screen.
 *
 * Top: player for the original recording.  Left: the atomic segments the
 * pipeline extracted.  Middle: expected-sound and probe pickers with
 * make/break association buttons.  Right: score buttons 0..3.  Save
 * issues one PUT per edited segment and keeps local edits when the
 * server refuses them.
 */

import { ApiClient, ApiError, Segment, Session } from "./api.js";
import { PHONEMES, probesFor } from "./phonemes.js";

export const SCORES = [0, 1, 2, 3] as const;

interface Draft {
  expected_sound: string;
  probe: string;
  score: number | null;
}

function draftOf(segment: Segment): Draft {
  if (segment.evaluation) {
    return {
      expected_sound: segment.evaluation.expected_sound,
      probe: segment.evaluation.probe,
      score: segment.evaluation.score,
    };
  }
  return { expected_sound: "", probe: "", score: null };
}

function sameDraft(a: Draft, b: Draft): boolean {
  return (
    a.expected_sound === b.expected_sound &&
    a.probe === b.probe &&
    a.score === b.score
  );
}

export interface SessionReviewHandle {
  readonly sessionId: string;
  hasUnsavedChanges(): boolean;
  /** Reload server state, discarding local edits. */
  refresh(): Promise<void>;
}

export async function renderSessionReview(
  root: HTMLElement,
  api: ApiClient,
  sessionId: string,
): Promise<SessionReviewHandle> {
  let session: Session = await api.getSession(sessionId);
  const pristine = new Map<string, Draft>();
  const drafts = new Map<string, Draft>();
  let selectedId: string | null = null;

  root.innerHTML = `
    <section class="session-review">
      <header class="review-top">
        <audio class="session-player" controls preload="none"></audio>
        <span class="session-meta"></span>
      </header>
      <div class="review-columns">
        <nav class="segment-list"></nav>
        <div class="association-panel">
          <audio class="segment-player" controls preload="none" hidden></audio>
          <label>Expected sound
            <select class="sound-picker"></select>
          </label>
          <label>Probe
            <select class="probe-picker"></select>
          </label>
          <div class="association-actions">
            <button type="button" class="make-association">Make association</button>
            <button type="button" class="break-association">Break association</button>
          </div>
          <p class="association-state"></p>
        </div>
        <div class="score-panel"></div>
      </div>
      <footer class="review-footer">
        <button type="button" class="save-button">Save</button>
        <span class="dirty-indicator"></span>
        <div class="error-banner" hidden></div>
      </footer>
    </section>
  `;

  const player = root.querySelector(".session-player") as HTMLAudioElement;
  const meta = root.querySelector(".session-meta") as HTMLElement;
  const listEl = root.querySelector(".segment-list") as HTMLElement;
  const segmentPlayer = root.querySelector(".segment-player") as HTMLAudioElement;
  const soundPicker = root.querySelector(".sound-picker") as HTMLSelectElement;
  const probePicker = root.querySelector(".probe-picker") as HTMLSelectElement;
  const makeButton = root.querySelector(".make-association") as HTMLButtonElement;
  const breakButton = root.querySelector(".break-association") as HTMLButtonElement;
  const associationState = root.querySelector(".association-state") as HTMLElement;
  const scorePanel = root.querySelector(".score-panel") as HTMLElement;
  const saveButton = root.querySelector(".save-button") as HTMLButtonElement;
  const dirtyIndicator = root.querySelector(".dirty-indicator") as HTMLElement;
  const errorBanner = root.querySelector(".error-banner") as HTMLElement;

  player.src = api.sessionAudioUrl(sessionId);

  soundPicker.innerHTML =
    `<option value="">(pick a sound)</option>` +
    PHONEMES.map((p) => `<option value="${p.sound}">${p.sound}</option>`).join("");

  for (const score of SCORES) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "score-button";
    button.dataset.score = String(score);
    button.textContent = String(score);
    button.addEventListener("click", () => {
      if (selectedId === null) return;
      draft(selectedId).score = score;
      update();
    });
    scorePanel.appendChild(button);
  }

  function draft(id: string): Draft {
    const existing = drafts.get(id);
    if (existing) return existing;
    const fresh = draftOf(session.segments.find((s) => s.id === id)!);
    drafts.set(id, fresh);
    return fresh;
  }

  function isDirty(id: string): boolean {
    const edited = drafts.get(id);
    const base = pristine.get(id);
    return edited !== undefined && base !== undefined &&
      !sameDraft(edited, base);
  }

  function anyDirty(): boolean {
    return session.segments.some((s) => isDirty(s.id));
  }

  function resetFromSession() {
    pristine.clear();
    drafts.clear();
    for (const segment of session.segments) {
      pristine.set(segment.id, draftOf(segment));
      drafts.set(segment.id, draftOf(segment));
    }
    if (selectedId !== null &&
        !session.segments.some((s) => s.id === selectedId)) {
      selectedId = null;
    }
  }

  function fillProbePicker(current: Draft) {
    const options = new Set(probesFor(soundPicker.value));
    if (current.probe) options.add(current.probe);
    probePicker.innerHTML =
      `<option value="">(pick a probe)</option>` +
      [...options].map((p) => `<option value="${p}">${p}</option>`).join("");
    probePicker.value = current.probe &&
      options.has(current.probe) ? current.probe : "";
  }

  function describe(segment: Segment): string {
    const seconds = (n: number) => (n / session.sample_rate).toFixed(2);
    return `${seconds(segment.start)}s – ${seconds(segment.end)}s`;
  }

  function update() {
    meta.textContent =
      `${session.phase} · ${session.segments.length} segment(s)`;

    if (session.segments.length === 0) {
      listEl.innerHTML = `<p class="empty-state">No segments in this session.</p>`;
    } else {
      listEl.innerHTML = "";
      session.segments.forEach((segment, index) => {
        const item = document.createElement("button");
        item.type = "button";
        item.className = "segment-item";
        item.dataset.segmentId = segment.id;
        const state = draft(segment.id);
        const scored = state.score !== null ? ` · ${state.score}` : "";
        const mark = isDirty(segment.id) ? " *" : "";
        item.textContent = `#${index} ${describe(segment)}${scored}${mark}`;
        if (segment.id === selectedId) item.classList.add("selected");
        item.addEventListener("click", () => {
          selectedId = segment.id;
          update();
        });
        listEl.appendChild(item);
      });
    }

    const hasSelection = selectedId !== null;
    segmentPlayer.hidden = !hasSelection;
    soundPicker.disabled = !hasSelection;
    probePicker.disabled = !hasSelection;
    makeButton.disabled = !hasSelection;
    breakButton.disabled = !hasSelection;
    for (const button of scorePanel.querySelectorAll("button")) {
      (button as HTMLButtonElement).disabled = !hasSelection;
      button.classList.remove("selected");
    }

    if (hasSelection && selectedId !== null) {
      const state = draft(selectedId);
      segmentPlayer.src = api.segmentAudioUrl(selectedId);
      if (soundPicker.value === "" || state.expected_sound !== "") {
        soundPicker.value = state.expected_sound;
      }
      fillProbePicker(state);
      associationState.textContent = state.expected_sound
        ? `associated: ${state.expected_sound} / ${state.probe}`
        : "no association";
      const chosen = scorePanel.querySelector(
        `button[data-score="${state.score}"]`);
      if (chosen) chosen.classList.add("selected");
    } else {
      associationState.textContent = "";
    }

    saveButton.disabled = session.segments.length === 0 || !anyDirty();
    dirtyIndicator.textContent = anyDirty() ? "unsaved changes" : "";
  }

  function showError(error: unknown) {
    errorBanner.hidden = false;
    if (error instanceof ApiError) {
      errorBanner.textContent = `[${error.code}] ${error.message}`;
    } else {
      errorBanner.textContent = String(error);
    }
  }

  soundPicker.addEventListener("change", () => {
    if (selectedId === null) return;
    fillProbePicker(draft(selectedId));
  });

  makeButton.addEventListener("click", () => {
    if (selectedId === null) return;
    const state = draft(selectedId);
    state.expected_sound = soundPicker.value;
    state.probe = probePicker.value;
    update();
  });

  breakButton.addEventListener("click", () => {
    if (selectedId === null) return;
    const state = draft(selectedId);
    state.expected_sound = "";
    state.probe = "";
    update();
  });

  saveButton.addEventListener("click", () => {
    void save();
  });

  async function save(): Promise<void> {
    errorBanner.hidden = true;
    const incomplete: string[] = [];
    try {
      for (const segment of session.segments) {
        if (!isDirty(segment.id)) continue;
        const state = draft(segment.id);
        if (!state.expected_sound || !state.probe || state.score === null) {
          incomplete.push(segment.id);
          continue;
        }
        const saved = await api.putEvaluation(segment.id, {
          expected_sound: state.expected_sound,
          probe: state.probe,
          score: state.score,
        });
        pristine.set(segment.id, {
          expected_sound: saved.expected_sound,
          probe: saved.probe,
          score: saved.score,
        });
        drafts.set(segment.id, {
          expected_sound: saved.expected_sound,
          probe: saved.probe,
          score: saved.score,
        });
      }
      if (incomplete.length > 0) {
        errorBanner.hidden = false;
        errorBanner.textContent =
          `${incomplete.length} segment(s) need a sound, a probe and a ` +
          `score before they can be saved; edits kept.`;
      }
    } catch (error) {
      showError(error);   // edits stay in place for another attempt
    }
    update();
  }

  async function refresh(): Promise<void> {
    session = await api.getSession(sessionId);
    resetFromSession();
    errorBanner.hidden = true;
    update();
  }

  resetFromSession();
  update();

  return {
    sessionId,
    hasUnsavedChanges: anyDirty,
    refresh,
  };
}
