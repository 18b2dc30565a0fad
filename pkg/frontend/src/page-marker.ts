/**
 * Page marker: numbers every interactable element with a badge anchored at
 * its top-left corner and reports element metadata as a JSON string.
 *
 * Self-contained script asset: no imports, no globals beyond the single
 * `window.__pageMarker` namespace it installs. Executed inside the page via
 * the driving session's script channel. All overlay nodes live under one
 * container with pointer-events disabled, so marking never intercepts
 * clicks, and removing the container restores the DOM byte-identically.
 */

interface MarkedElementInfo {
  label: number;
  bbox: [number, number, number, number];
  tag: string;
  text: string;
  kind: "Clickable" | "Typeable";
}

interface MarkerResult {
  elements: MarkedElementInfo[];
  overlay_container_id: string;
}

(function () {
  "use strict";

  const OVERLAY_ID = "__page_marker_overlay__";
  const TYPEABLE_INPUT_TYPES = ["", "text", "search", "email", "url", "tel", "number", "password"];

  function isCandidate(el: Element): boolean {
    const tag = el.tagName.toLowerCase();
    if (tag === "a") {
      return el.hasAttribute("href");
    }
    if (tag === "button" || tag === "input" || tag === "textarea" || tag === "select") {
      return true;
    }
    if (el.hasAttribute("onclick") || el.getAttribute("role") === "button") {
      return true;
    }
    return window.getComputedStyle(el).cursor === "pointer";
  }

  function isVisible(el: Element): boolean {
    const style = window.getComputedStyle(el);
    if (style.display === "none" || style.visibility === "hidden") {
      return false;
    }
    const rect = el.getBoundingClientRect();
    return rect.width > 0 && rect.height > 0;
  }

  function sameRect(a: DOMRect, b: DOMRect): boolean {
    return (
      Math.abs(a.left - b.left) < 0.5 &&
      Math.abs(a.top - b.top) < 0.5 &&
      Math.abs(a.width - b.width) < 0.5 &&
      Math.abs(a.height - b.height) < 0.5
    );
  }

  /** Drop a clickable ancestor when a candidate descendant covers the same box. */
  function dedupe(els: Element[]): Element[] {
    return els.filter(function (el) {
      const rect = el.getBoundingClientRect();
      return !els.some(function (other) {
        return other !== el && el.contains(other) && sameRect(rect, other.getBoundingClientRect());
      });
    });
  }

  function elementKind(el: Element): "Clickable" | "Typeable" {
    const tag = el.tagName.toLowerCase();
    if (tag === "textarea") {
      return "Typeable";
    }
    if (tag === "input") {
      const type = (el.getAttribute("type") || "").toLowerCase();
      return TYPEABLE_INPUT_TYPES.indexOf(type) >= 0 ? "Typeable" : "Clickable";
    }
    return "Clickable";
  }

  function snippet(el: Element): string {
    const text =
      (el.textContent || "").trim() ||
      el.getAttribute("value") ||
      el.getAttribute("placeholder") ||
      el.getAttribute("aria-label") ||
      "";
    return text.replace(/\s+/g, " ").trim().slice(0, 80);
  }

  function collectTargets(): Element[] {
    const head = document.head;
    const targets: Element[] = [];
    const all = document.querySelectorAll("*"); // document order
    for (let i = 0; i < all.length; i++) {
      const el = all[i];
      if (el.id === OVERLAY_ID || (el.closest && el.closest("#" + OVERLAY_ID))) {
        continue;
      }
      if (head && head.contains(el)) {
        continue;
      }
      if (isCandidate(el) && isVisible(el)) {
        targets.push(el);
      }
    }
    return dedupe(targets);
  }

  function removeOverlay(): void {
    const overlay = document.getElementById(OVERLAY_ID);
    if (overlay && overlay.parentNode) {
      overlay.parentNode.removeChild(overlay);
    }
  }

  function badgeFor(label: number, rect: DOMRect): HTMLElement {
    const box = document.createElement("div");
    box.style.cssText =
      "position:absolute;pointer-events:none;box-sizing:border-box;" +
      "border:2px solid #ff3b30;" +
      "left:" + (rect.left + window.scrollX) + "px;" +
      "top:" + (rect.top + window.scrollY) + "px;" +
      "width:" + rect.width + "px;" +
      "height:" + rect.height + "px;";
    const badge = document.createElement("span");
    badge.textContent = String(label);
    badge.style.cssText =
      "position:absolute;top:0;left:0;" +
      "background:#ff3b30;color:#ffffff;" +
      "font:700 12px/1.2 monospace;padding:1px 4px;pointer-events:none;";
    box.appendChild(badge);
    return box;
  }

  function collectAndMark(): string {
    removeOverlay(); // marking twice replaces, never duplicates
    const targets = collectTargets();
    const overlay = document.createElement("div");
    overlay.id = OVERLAY_ID;
    overlay.style.cssText =
      "position:absolute;top:0;left:0;width:0;height:0;" +
      "z-index:2147483647;pointer-events:none;";
    const elements: MarkedElementInfo[] = [];
    for (let i = 0; i < targets.length; i++) {
      const el = targets[i];
      const rect = el.getBoundingClientRect();
      overlay.appendChild(badgeFor(i + 1, rect));
      elements.push({
        label: i + 1,
        bbox: [rect.left, rect.top, rect.width, rect.height],
        tag: el.tagName.toLowerCase(),
        text: snippet(el),
        kind: elementKind(el),
      });
    }
    (document.body || document.documentElement).appendChild(overlay);
    const result: MarkerResult = { elements: elements, overlay_container_id: OVERLAY_ID };
    return JSON.stringify(result);
  }

  (window as any).__pageMarker = {
    collectAndMark: collectAndMark,
    unmark: removeOverlay,
  };
})();
