/** Hash-routed single-page shell.
 *
 * Routes: ``#/`` child and session index, ``#/sessions/<id>`` review
 * screen, ``#/expert/<childId>`` validation panel.  Navigating away from
 * unsaved edits asks first; a confirmed discard reloads server state.
 */

import { ApiClient } from "./api.js";
import { renderExpertPanel } from "./expert_view.js";
import { renderSessionReview, SessionReviewHandle } from "./session_view.js";

const api = new ApiClient(
  (window as { PHONOLAB_API?: string }).PHONOLAB_API ?? "",
);

let activeReview: SessionReviewHandle | null = null;

function guardNavigation(): boolean {
  if (activeReview && activeReview.hasUnsavedChanges()) {
    const leave = window.confirm(
      "This session has unsaved evaluations. Discard them?");
    if (!leave) return false;
  }
  activeReview = null;
  return true;
}

async function renderIndex(root: HTMLElement) {
  const children = await api.listChildren();
  root.innerHTML = `<section class="index-view"><h2>Children</h2>
    <ul class="child-list"></ul></section>`;
  const list = root.querySelector(".child-list") as HTMLElement;
  if (children.length === 0) {
    list.innerHTML = `<li class="empty-state">No children registered.</li>`;
    return;
  }
  for (const child of children) {
    const item = document.createElement("li");
    item.className = "child-item";
    item.innerHTML =
      `<strong>${child.name}</strong> (${child.disorder}, ` +
      `${child.therapy_group}) ` +
      `<a href="#/expert/${child.id}">expert panel</a>` +
      `<ul class="session-list"></ul>`;
    const sessions = await api.listSessions(child.id);
    const sessionList = item.querySelector(".session-list") as HTMLElement;
    for (const session of sessions) {
      const row = document.createElement("li");
      row.innerHTML = `<a href="#/sessions/${session.id}">` +
        `${session.phase} · ${session.segments.length} segment(s)</a>`;
      sessionList.appendChild(row);
    }
    list.appendChild(item);
  }
}

async function route() {
  const root = document.getElementById("app");
  if (!root) return;
  const hash = window.location.hash || "#/";
  try {
    const sessionMatch = hash.match(/^#\/sessions\/(.+)$/);
    const expertMatch = hash.match(/^#\/expert\/(.+)$/);
    if (sessionMatch) {
      activeReview = await renderSessionReview(root, api, sessionMatch[1]);
    } else if (expertMatch) {
      await renderExpertPanel(root, api, expertMatch[1]);
    } else {
      await renderIndex(root);
    }
  } catch (error) {
    root.innerHTML = `<div class="error-banner">${String(error)}</div>`;
  }
}

let lastHash = window.location.hash || "#/";

window.addEventListener("hashchange", () => {
  if (!guardNavigation()) {
    window.location.hash = lastHash;   // stay put
    return;
  }
  lastHash = window.location.hash;
  void route();
});

window.addEventListener("beforeunload", (event) => {
  if (activeReview && activeReview.hasUnsavedChanges()) {
    event.preventDefault();
  }
});

void route();
