// Application shell: a session tab per automaton and the question tab.

import { ApiClient } from "./api.js";
import { QueryBuilder } from "./query.js";
import { SessionScreen } from "./session.js";

export async function boot(root: HTMLElement, client: ApiClient): Promise<void> {
  root.replaceChildren();

  const nav = document.createElement("nav");
  const content = document.createElement("main");
  root.appendChild(nav);
  root.appendChild(content);

  const automata = await client.listAutomata();

  const tabs: Array<{ label: string; open: () => Promise<void> }> = [];
  for (const automaton of automata) {
    tabs.push({
      label: `session: ${automaton.id}`,
      open: async () => {
        const screen = new SessionScreen(client, content);
        await screen.start(automaton.id);
      },
    });
  }
  tabs.push({
    label: "ask a question",
    open: async () => {
      const builder = new QueryBuilder(client, content);
      await builder.start();
    },
  });

  for (const tab of tabs) {
    const button = document.createElement("button");
    button.textContent = tab.label;
    button.addEventListener("click", () => void tab.open());
    nav.appendChild(button);
  }

  if (tabs.length > 0) {
    await tabs[0].open();
  }
}

export function serviceUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("service") ?? "http://127.0.0.1:8000";
}
