import { normalizeMoneyInput, parseUnitsInput } from "./format";
import type { MutationStep } from "./types";

export type ScriptHandler = (script: MutationStep[], source: string) => void;

/** Structural edits: add supplier / add destination / add lane / remove
 * lane, each a small form that submits one mutation script. Users enter
 * names and numbers only — the script structure is fixed here, so a full
 * editing session never involves anything formula-like. */
export class StructureForms {
  constructor(
    private readonly root: HTMLElement,
    private readonly onScript: ScriptHandler,
  ) {}

  render(suppliers: string[], destinations: string[]): void {
    this.root.innerHTML = "";
    this.root.append(
      this.addSupplierForm(),
      this.addDestinationForm(),
      this.addLaneForm(suppliers, destinations),
      this.removeLaneForm(suppliers, destinations),
    );
  }

  showError(form: string, message: string): void {
    const slot = this.root.querySelector<HTMLElement>(
      `form[data-form="${form}"] .form-error`,
    );
    if (slot) slot.textContent = message;
  }

  private addSupplierForm(): HTMLFormElement {
    const form = this.form("add-supplier", "Add supplier");
    form.append(
      labelled("name", textInput("name")),
      labelled("capacity", textInput("capacity")),
      submitButton("Add supplier"),
      errorSlot(),
    );
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const name = fieldValue(form, "name").trim();
      const capacity = parseUnitsInput(fieldValue(form, "capacity"));
      if (!name) return this.showError("add-supplier", "name must not be empty");
      if (capacity === null) {
        return this.showError("add-supplier", "capacity must be a whole number");
      }
      this.onScript([{ op: "add_supplier", args: { name, capacity } }], "add-supplier");
    });
    return form;
  }

  private addDestinationForm(): HTMLFormElement {
    const form = this.form("add-destination", "Add destination");
    form.append(
      labelled("name", textInput("name")),
      labelled("required", textInput("required")),
      submitButton("Add destination"),
      errorSlot(),
    );
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const name = fieldValue(form, "name").trim();
      const required = parseUnitsInput(fieldValue(form, "required"));
      if (!name) return this.showError("add-destination", "name must not be empty");
      if (required === null) {
        return this.showError("add-destination", "required must be a whole number");
      }
      this.onScript([{ op: "add_destination", args: { name, required } }], "add-destination");
    });
    return form;
  }

  private addLaneForm(suppliers: string[], destinations: string[]): HTMLFormElement {
    const form = this.form("add-lane", "Add lane");
    form.append(
      labelled("supplier", select("supplier", suppliers)),
      labelled("destination", select("destination", destinations)),
      labelled("cost/unit", textInput("unit_cost")),
      labelled("start quantity", textInput("initial_quantity", "0")),
      submitButton("Add lane"),
      errorSlot(),
    );
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const unitCost = normalizeMoneyInput(fieldValue(form, "unit_cost"));
      const quantity = parseUnitsInput(fieldValue(form, "initial_quantity"));
      if (unitCost === null) {
        return this.showError("add-lane", "cost must be an amount like 43.00");
      }
      if (quantity === null) {
        return this.showError("add-lane", "start quantity must be a whole number");
      }
      this.onScript(
        [
          {
            op: "add_lane",
            args: {
              supplier: fieldValue(form, "supplier"),
              destination: fieldValue(form, "destination"),
              unit_cost: unitCost,
              initial_quantity: quantity,
            },
          },
        ],
        "add-lane",
      );
    });
    return form;
  }

  private removeLaneForm(suppliers: string[], destinations: string[]): HTMLFormElement {
    const form = this.form("remove-lane", "Remove lane");
    form.append(
      labelled("supplier", select("supplier", suppliers)),
      labelled("destination", select("destination", destinations)),
      submitButton("Remove lane"),
      errorSlot(),
    );
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      this.onScript(
        [
          {
            op: "remove_lane",
            args: {
              supplier: fieldValue(form, "supplier"),
              destination: fieldValue(form, "destination"),
            },
          },
        ],
        "remove-lane",
      );
    });
    return form;
  }

  private form(kind: string, heading: string): HTMLFormElement {
    const form = document.createElement("form");
    form.dataset.form = kind;
    form.className = "structure-form";
    const title = document.createElement("h3");
    title.textContent = heading;
    form.append(title);
    return form;
  }
}

function fieldValue(form: HTMLFormElement, name: string): string {
  const field = form.elements.namedItem(name);
  if (field instanceof HTMLInputElement || field instanceof HTMLSelectElement) {
    return field.value;
  }
  return "";
}

function textInput(name: string, value = ""): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "text";
  input.name = name;
  input.value = value;
  return input;
}

function select(name: string, options: string[]): HTMLSelectElement {
  const element = document.createElement("select");
  element.name = name;
  for (const option of options) {
    const item = document.createElement("option");
    item.value = option;
    item.textContent = option;
    element.append(item);
  }
  return element;
}

function labelled(text: string, control: HTMLElement): HTMLLabelElement {
  const label = document.createElement("label");
  const caption = document.createElement("span");
  caption.textContent = text;
  label.append(caption, control);
  return label;
}

function submitButton(text: string): HTMLButtonElement {
  const button = document.createElement("button");
  button.type = "submit";
  button.textContent = text;
  return button;
}

function errorSlot(): HTMLSpanElement {
  const span = document.createElement("span");
  span.className = "form-error";
  return span;
}
