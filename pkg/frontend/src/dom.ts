/** Small DOM construction helpers; no framework, no templates. */

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | ((event: Event) => void)> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key.replace(/^on/, ""), value);
    } else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return node;
}

export function clear(node: HTMLElement): HTMLElement {
  node.replaceChildren();
  return node;
}

export function errorBox(message: string, extra?: string): HTMLElement {
  return el(
    "div",
    { class: "error-box", role: "alert" },
    el("strong", {}, message),
    extra ? el("span", {}, ` ${extra}`) : null,
  );
}

export function field(labelText: string, input: HTMLElement, error?: string | null): HTMLElement {
  return el(
    "label",
    { class: "field" },
    el("span", { class: "field-label" }, labelText),
    input,
    error ? el("span", { class: "field-error" }, error) : null,
  );
}
