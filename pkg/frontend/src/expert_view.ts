/** Expert-system validation screen.
 *
 * Severity/progress sliders fetch a fresh suggestion from the backend on
 * every change (nothing is computed locally), the fired-rule trace is
 * listed next to the crisp outputs, an override form feeds corrections
 * back, and the knowledge-base editor validates server-side before any
 * swap.
 */

import { ApiClient, ApiError, Suggestion } from "./api.js";

export interface ExpertViewHandle {
  /** Suggestion currently on screen (source of the override id). */
  current(): Suggestion | null;
  /** Re-query with the sliders' present positions. */
  refresh(): Promise<void>;
}

export async function renderExpertPanel(
  root: HTMLElement,
  api: ApiClient,
  childId: string,
): Promise<ExpertViewHandle> {
  root.innerHTML = `
    <section class="expert-panel">
      <div class="input-panel">
        <label>Severity
          <input type="range" class="severity-slider"
                 min="0" max="3" step="0.05" value="0">
          <output class="severity-value">0</output>
        </label>
        <label>Progress
          <input type="range" class="progress-slider"
                 min="-1" max="1" step="0.05" value="0">
          <output class="progress-value">0</output>
        </label>
      </div>
      <div class="suggestion-panel">
        <p>difficulty: <span class="difficulty-value"></span></p>
        <p>dosage: <span class="dosage-value"></span></p>
        <table class="trace-table">
          <thead>
            <tr><th>rule</th><th>degree</th><th>activation</th><th>drives</th></tr>
          </thead>
          <tbody></tbody>
        </table>
        <p class="defaulted-note" hidden></p>
      </div>
      <form class="override-form">
        <label>Therapist difficulty
          <input type="number" class="override-difficulty"
                 min="1" max="5" step="0.1">
        </label>
        <label>Therapist dosage
          <input type="number" class="override-dosage"
                 min="5" max="20" step="0.5">
        </label>
        <button type="submit" class="override-submit">Apply override</button>
        <p class="override-result"></p>
      </form>
      <div class="kb-panel">
        <textarea class="kb-editor" rows="20" spellcheck="false"></textarea>
        <button type="button" class="kb-save">Validate &amp; save</button>
        <p class="kb-status"></p>
        <p class="kb-error" hidden></p>
      </div>
      <div class="error-banner" hidden></div>
    </section>
  `;

  const severitySlider = root.querySelector(".severity-slider") as HTMLInputElement;
  const progressSlider = root.querySelector(".progress-slider") as HTMLInputElement;
  const severityValue = root.querySelector(".severity-value") as HTMLOutputElement;
  const progressValue = root.querySelector(".progress-value") as HTMLOutputElement;
  const difficultyEl = root.querySelector(".difficulty-value") as HTMLElement;
  const dosageEl = root.querySelector(".dosage-value") as HTMLElement;
  const traceBody = root.querySelector(".trace-table tbody") as HTMLElement;
  const defaultedNote = root.querySelector(".defaulted-note") as HTMLElement;
  const overrideForm = root.querySelector(".override-form") as HTMLFormElement;
  const overrideDifficulty = root.querySelector(".override-difficulty") as HTMLInputElement;
  const overrideDosage = root.querySelector(".override-dosage") as HTMLInputElement;
  const overrideResult = root.querySelector(".override-result") as HTMLElement;
  const kbEditor = root.querySelector(".kb-editor") as HTMLTextAreaElement;
  const kbSave = root.querySelector(".kb-save") as HTMLButtonElement;
  const kbStatus = root.querySelector(".kb-status") as HTMLElement;
  const kbError = root.querySelector(".kb-error") as HTMLElement;
  const errorBanner = root.querySelector(".error-banner") as HTMLElement;

  let suggestion: Suggestion | null = null;

  function showError(error: unknown) {
    errorBanner.hidden = false;
    errorBanner.textContent = error instanceof ApiError
      ? `[${error.code}] ${error.message}`
      : String(error);
  }

  function renderSuggestion(doc: Suggestion) {
    suggestion = doc;
    difficultyEl.textContent = doc.difficulty.toFixed(3);
    difficultyEl.dataset.value = String(doc.difficulty);
    dosageEl.textContent = doc.dosage.toFixed(3);
    dosageEl.dataset.value = String(doc.dosage);
    traceBody.innerHTML = "";
    for (const firing of doc.trace.firings) {
      if (firing.activation <= 0) continue;
      const row = document.createElement("tr");
      row.className = "trace-row";
      row.innerHTML = `
        <td>${firing.block}/${firing.rule_id}</td>
        <td>${firing.degree.toFixed(3)}</td>
        <td>${firing.activation.toFixed(3)}</td>
        <td>${firing.consequents
          .map(([variable, term]) => `${variable}→${term}`)
          .join(", ")}</td>`;
      traceBody.appendChild(row);
    }
    defaultedNote.hidden = doc.trace.defaulted.length === 0;
    defaultedNote.textContent = doc.trace.defaulted.length
      ? `defaults used for: ${doc.trace.defaulted.join(", ")}`
      : "";
  }

  async function refresh(): Promise<void> {
    errorBanner.hidden = true;
    severityValue.textContent = severitySlider.value;
    progressValue.textContent = progressSlider.value;
    try {
      renderSuggestion(await api.getSuggestion(childId, {
        severity: Number(severitySlider.value),
        progress: Number(progressSlider.value),
      }));
    } catch (error) {
      showError(error);
    }
  }

  severitySlider.addEventListener("change", () => void refresh());
  progressSlider.addEventListener("change", () => void refresh());

  overrideForm.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      if (!suggestion) return;
      errorBanner.hidden = true;
      const body: { difficulty?: number; dosage?: number } = {};
      if (overrideDifficulty.value !== "") {
        body.difficulty = Number(overrideDifficulty.value);
      }
      if (overrideDosage.value !== "") {
        body.dosage = Number(overrideDosage.value);
      }
      try {
        const result = await api.postOverride(suggestion.id, body);
        overrideResult.textContent = result.changes.length === 0
          ? "no weight changes"
          : result.changes
            .map((c) => `rule ${c.rule_id}: ${c.old_weight.toFixed(3)} → ` +
                        `${c.new_weight.toFixed(3)}`)
            .join("; ");
        await refresh();     // the adapted base may answer differently now
      } catch (error) {
        showError(error);
      }
    })();
  });

  kbSave.addEventListener("click", () => {
    void (async () => {
      kbError.hidden = true;
      kbStatus.textContent = "";
      try {
        const summary = await api.putKb(kbEditor.value);
        kbStatus.textContent =
          `saved: ${summary.name}, ${summary.rules} rule(s)`;
        await refresh();
      } catch (error) {
        if (error instanceof ApiError) {
          kbError.hidden = false;
          kbError.textContent = `[${error.code}] ${error.message}`;
        } else {
          showError(error);
        }
      }
    })();
  });

  kbEditor.value = await api.getKb();
  await refresh();

  return {
    current: () => suggestion,
    refresh,
  };
}
