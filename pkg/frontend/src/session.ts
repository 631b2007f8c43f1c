// The interactive session screen: one button per action and per
// invalidation event.  Every press posts the event and re-renders from
// the response; there is no optimistic state and no client-side rule
// evaluation.  Presses are strictly sequential: while one request is in
// flight further presses are ignored and the buttons are disabled.

import { ApiClient, ApiError, AutomatonInfo, SessionDoc } from "./api.js";

const TERMINAL_BANNER = new Set(["valid", "invalidated"]);

export class SessionScreen {
  private automaton: AutomatonInfo | null = null;
  private session: SessionDoc | null = null;
  private error: string | null = null;
  private lastEvent: string | null = null;
  private busy = false;

  // Tests await this to observe the end of the in-flight request.
  pending: Promise<void> = Promise.resolve();

  constructor(private readonly client: ApiClient, private readonly root: HTMLElement) {}

  async start(automatonId: string): Promise<void> {
    const automata = await this.client.listAutomata();
    const automaton = automata.find((a) => a.id === automatonId);
    if (!automaton) {
      throw new Error(`unknown automaton: ${automatonId}`);
    }
    this.automaton = automaton;
    this.session = await this.client.createSession(automatonId);
    this.error = null;
    this.render();
  }

  press(eventId: string): Promise<void> {
    if (this.busy || !this.session) {
      return this.pending;
    }
    this.busy = true;
    this.lastEvent = eventId;
    this.render();
    this.pending = this.client
      .postEvent(this.session.session_id, eventId)
      .then((doc) => {
        this.session = doc;
        this.error = null;
      })
      .catch((err) => {
        this.error = err instanceof ApiError ? err.message : String(err);
      })
      .then(() => {
        this.busy = false;
        this.render();
      });
    return this.pending;
  }

  retry(): Promise<void> {
    if (this.lastEvent === null) {
      return this.pending;
    }
    this.error = null;
    return this.press(this.lastEvent);
  }

  render(): void {
    const { automaton, session } = this;
    this.root.replaceChildren();
    if (!automaton || !session) {
      return;
    }

    const heading = document.createElement("h2");
    heading.textContent = automaton.id;
    this.root.appendChild(heading);

    const status = document.createElement("p");
    status.className = "status-line";
    status.dataset.status = session.status;
    status.textContent = `status: ${session.status}`;
    this.root.appendChild(status);

    if (TERMINAL_BANNER.has(session.status)) {
      const banner = document.createElement("div");
      banner.className = `banner banner-${session.status}`;
      banner.dataset.banner = "";
      banner.textContent = session.status;
      this.root.appendChild(banner);
    }

    const credited = new Set(session.credited);
    const actions = document.createElement("div");
    actions.className = "actions";
    for (const action of automaton.actions) {
      const row = document.createElement("div");
      row.className = "action-row";
      const mark = document.createElement("span");
      mark.className = "mark";
      mark.textContent = credited.has(action.id) ? "[done]" : "[    ]";
      row.appendChild(mark);
      const button = document.createElement("button");
      button.dataset.action = action.id;
      button.textContent = action.label;
      button.dir = "auto";
      button.disabled = this.busy;
      button.addEventListener("click", () => void this.press(action.id));
      row.appendChild(button);
      actions.appendChild(row);
    }
    this.root.appendChild(actions);

    const events = document.createElement("div");
    events.className = "events";
    for (const event of automaton.invalidation_events) {
      const button = document.createElement("button");
      button.dataset.event = event.id;
      button.textContent = event.label;
      button.dir = "auto";
      button.disabled = this.busy;
      button.addEventListener("click", () => void this.press(event.id));
      events.appendChild(button);
    }
    this.root.appendChild(events);

    const advice = document.createElement("p");
    advice.className = "advice";
    advice.dataset.advice = "";
    advice.dir = "auto";
    advice.textContent = session.advice ? session.advice.message : "";
    this.root.appendChild(advice);

    if (session.expected_action !== null) {
      const expected = document.createElement("p");
      expected.className = "expected";
      expected.dataset.expected = session.expected_action;
      const label =
        automaton.actions.find((a) => a.id === session.expected_action)?.label ??
        session.expected_action;
      expected.textContent = `next: ${label}`;
      this.root.appendChild(expected);
    }

    if (this.error !== null) {
      const errorBanner = document.createElement("div");
      errorBanner.className = "banner banner-error";
      errorBanner.dataset.error = "";
      errorBanner.textContent = this.error;
      const retryButton = document.createElement("button");
      retryButton.dataset.retry = "";
      retryButton.textContent = "retry";
      retryButton.addEventListener("click", () => void this.retry());
      errorBanner.appendChild(retryButton);
      this.root.appendChild(errorBanner);
    }
  }
}
