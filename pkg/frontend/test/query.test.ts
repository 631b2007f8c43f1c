import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, QueryResponse } from "../src/api.js";
import { QueryBuilder } from "../src/query.js";
import {
  RunningService,
  click,
  mount,
  recordingTransport,
  startService,
  text,
} from "./service.js";

let service: RunningService;

beforeAll(async () => {
  service = await startService();
});

afterAll(() => {
  service.stop();
});

const CHILD_TRAVELING: Record<string, string> = {
  gender: "child",
  health: "not_sick",
  travel: "traveling",
  water_availability: "unavailable",
  substance: "plain_water",
  tool_condition: "pure",
  tool_worth: "ordinary",
  impurity_site: "private_parts",
  prayer_due: "due",
  action: "washing",
  outcome: "full",
};

async function openBuilder() {
  const transport = recordingTransport();
  const client = new ApiClient(service.baseUrl, transport.fetchFn);
  const root = mount();
  const builder = new QueryBuilder(client, root);
  await builder.start();
  return { builder, root, transport };
}

function selectAll(root: HTMLElement, builder: QueryBuilder, bindings: Record<string, string>) {
  for (const [attr, value] of Object.entries(bindings)) {
    const select = root.querySelector<HTMLSelectElement>(`[data-attr="${attr}"]`);
    if (!select) {
      throw new Error(`no selector for ${attr}`);
    }
    select.value = value;
    builder.choose(attr, value);
  }
}

describe("query builder", () => {
  it("disables submit until every attribute is chosen", async () => {
    const { builder, root } = await openBuilder();
    const submit = () => root.querySelector<HTMLButtonElement>("[data-submit]")!;
    expect(submit().disabled).toBe(true);
    selectAll(root, builder, { ...CHILD_TRAVELING, outcome: "" });
    expect(submit().disabled).toBe(true);
    selectAll(root, builder, { outcome: "full" });
    expect(submit().disabled).toBe(false);
  });

  it("renders the verdict and explanation verbatim from the response", async () => {
    const { builder, root, transport } = await openBuilder();
    selectAll(root, builder, CHILD_TRAVELING);
    click(root, "[data-submit]");
    await builder.pending;

    const doc = transport.last().body as QueryResponse;
    expect(doc.status).toBe("excluded");
    expect(text(root, "[data-query-status]")).toBe(doc.status);
    expect(text(root, "[data-query-verdict]")).toBe(doc.verdict);
    const rendered = Array.from(
      root.querySelectorAll("[data-query-explanation] li"),
    ).map((li) => li.textContent);
    expect(rendered).toEqual(doc.explanation);
    expect(doc.explanation.length).toBeGreaterThan(0);
  });

  it("renders a verdict with a non-empty explanation for the first-value selection", async () => {
    const { builder, root } = await openBuilder();
    const defaults: Record<string, string> = {};
    for (const select of Array.from(
      root.querySelectorAll<HTMLSelectElement>("select[data-attr]"),
    )) {
      const firstValue = select.options[1].value;
      defaults[select.dataset.attr!] = firstValue;
    }
    selectAll(root, builder, defaults);
    click(root, "[data-submit]");
    await builder.pending;
    expect(text(root, "[data-query-status]")).not.toBe("");
    expect(root.querySelectorAll("[data-query-explanation] li").length).toBeGreaterThan(0);
  });

  it("same payload twice renders the identical verdict", async () => {
    const { builder, root } = await openBuilder();
    selectAll(root, builder, CHILD_TRAVELING);
    click(root, "[data-submit]");
    await builder.pending;
    const first = {
      status: text(root, "[data-query-status]"),
      verdict: text(root, "[data-query-verdict]"),
      explanation: Array.from(
        root.querySelectorAll("[data-query-explanation] li"),
      ).map((li) => li.textContent),
    };
    click(root, "[data-submit]");
    await builder.pending;
    const second = {
      status: text(root, "[data-query-status]"),
      verdict: text(root, "[data-query-verdict]"),
      explanation: Array.from(
        root.querySelectorAll("[data-query-explanation] li"),
      ).map((li) => li.textContent),
    };
    expect(second).toEqual(first);
  });

  it("shows an error banner when the service fails", async () => {
    const { builder, root } = await openBuilder();
    selectAll(root, builder, CHILD_TRAVELING);
    (builder as unknown as { client: ApiClient }).client = new ApiClient(
      service.baseUrl,
      () => Promise.reject(new Error("connection refused")),
    );
    click(root, "[data-submit]");
    await builder.pending;
    expect(root.querySelector("[data-error]")).not.toBeNull();
    expect(root.querySelector("[data-query-status]")).toBeNull();
  });
});
