// The simple-question builder: one selector per space attribute, submit
// posts /query, and the verdict plus explanation render verbatim from
// the response.  Submit stays disabled until every attribute is chosen.

import { ApiClient, ApiError, QueryResponse, SpaceInfo } from "./api.js";

export class QueryBuilder {
  private space: SpaceInfo | null = null;
  private selections: Record<string, string> = {};
  private response: QueryResponse | null = null;
  private error: string | null = null;
  private busy = false;

  pending: Promise<void> = Promise.resolve();

  constructor(private readonly client: ApiClient, private readonly root: HTMLElement) {}

  async start(spaceId?: string): Promise<void> {
    const spaces = await this.client.listSpaces();
    const space = spaceId ? spaces.find((s) => s.id === spaceId) : spaces[0];
    if (!space) {
      throw new Error(`unknown space: ${spaceId}`);
    }
    this.space = space;
    this.selections = {};
    this.render();
  }

  complete(): boolean {
    if (!this.space) {
      return false;
    }
    return this.space.attributes.every((attr) => this.selections[attr.name]);
  }

  choose(attribute: string, value: string): void {
    if (value) {
      this.selections[attribute] = value;
    } else {
      delete this.selections[attribute];
    }
    this.render();
  }

  submit(): Promise<void> {
    if (this.busy || !this.space || !this.complete()) {
      return this.pending;
    }
    this.busy = true;
    this.render();
    this.pending = this.client
      .postQuery(this.space.id, { ...this.selections })
      .then((doc) => {
        this.response = doc;
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

  render(): void {
    const space = this.space;
    this.root.replaceChildren();
    if (!space) {
      return;
    }

    const heading = document.createElement("h2");
    heading.textContent = `ask: ${space.id}`;
    this.root.appendChild(heading);

    const form = document.createElement("div");
    form.className = "query-form";
    for (const attr of space.attributes) {
      const row = document.createElement("label");
      row.className = "query-row";
      const caption = document.createElement("span");
      caption.textContent = `${attr.element} / ${attr.name}`;
      caption.dir = "auto";
      row.appendChild(caption);

      const select = document.createElement("select");
      select.dataset.attr = attr.name;
      select.disabled = this.busy;
      const placeholder = document.createElement("option");
      placeholder.value = "";
      placeholder.textContent = "choose...";
      select.appendChild(placeholder);
      for (const value of attr.values) {
        const option = document.createElement("option");
        option.value = value.id;
        option.textContent = value.label;
        option.dir = "auto";
        option.selected = this.selections[attr.name] === value.id;
        select.appendChild(option);
      }
      select.addEventListener("change", () => this.choose(attr.name, select.value));
      row.appendChild(select);
      form.appendChild(row);
    }
    this.root.appendChild(form);

    const submit = document.createElement("button");
    submit.dataset.submit = "";
    submit.textContent = "ask";
    submit.disabled = this.busy || !this.complete();
    submit.addEventListener("click", () => void this.submit());
    this.root.appendChild(submit);

    const doc = this.response;
    if (doc) {
      const result = document.createElement("div");
      result.className = "query-result";

      const status = document.createElement("p");
      status.dataset.queryStatus = "";
      status.textContent = doc.status;
      result.appendChild(status);

      if (doc.verdict !== null) {
        const verdict = document.createElement("p");
        verdict.dataset.queryVerdict = "";
        verdict.dir = "auto";
        verdict.textContent = doc.verdict;
        result.appendChild(verdict);
      }

      const explanation = document.createElement("ul");
      explanation.dataset.queryExplanation = "";
      for (const line of doc.explanation) {
        const item = document.createElement("li");
        item.dir = "auto";
        item.textContent = line;
        explanation.appendChild(item);
      }
      result.appendChild(explanation);
      this.root.appendChild(result);
    }

    if (this.error !== null) {
      const errorBanner = document.createElement("div");
      errorBanner.className = "banner banner-error";
      errorBanner.dataset.error = "";
      errorBanner.textContent = this.error;
      this.root.appendChild(errorBanner);
    }
  }
}
