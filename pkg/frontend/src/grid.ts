import { groupMoney, parseUnitsInput } from "./format";
import type { GridViewModel } from "./state";

export type CellCommitHandler = (supplier: string, destination: string, quantity: number) => void;

/** The matrix screen: one row per supplier, one column per destination,
 * unit cost and an editable quantity in each permitted cell. Blocked
 * pairs render as inert dashes — there is no input element to type into.
 * Edits commit on Enter or blur, never per keystroke. */
export class GridView {
  private vm: GridViewModel | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly onCellCommit: CellCommitHandler,
  ) {}

  render(vm: GridViewModel): void {
    this.vm = vm;
    this.root.innerHTML = "";
    const table = document.createElement("table");
    table.className = "grid";
    table.append(this.header(vm), this.body(vm), this.footer(vm));
    this.root.append(table);
  }

  /** Flag one cell after the service refused its committed value. */
  showCellError(supplier: string, destination: string, message: string): void {
    const input = this.cellInput(supplier, destination);
    if (input) {
      input.classList.add("invalid");
      input.title = message;
      delete input.dataset.sent;
    }
  }

  private cellInput(supplier: string, destination: string): HTMLInputElement | null {
    for (const input of this.root.querySelectorAll<HTMLInputElement>("input.qty")) {
      if (input.dataset.supplier === supplier && input.dataset.destination === destination) {
        return input;
      }
    }
    return null;
  }

  private header(vm: GridViewModel): HTMLTableSectionElement {
    const thead = document.createElement("thead");
    const tr = document.createElement("tr");
    tr.append(th("corner", "Supplier \\ Destination"));
    for (const column of vm.columns) {
      const cell = th("col", column.name);
      cell.dataset.column = column.name;
      if (column.shortfall) cell.classList.add("short");
      tr.append(cell);
    }
    tr.append(th("margin-head", "Capacity"), th("margin-head", "Supplied"));
    thead.append(tr);
    return thead;
  }

  private body(vm: GridViewModel): HTMLTableSectionElement {
    const tbody = document.createElement("tbody");
    vm.rows.forEach((row, i) => {
      const tr = document.createElement("tr");
      tr.dataset.row = row.name;
      if (row.overCapacity) tr.classList.add("over-capacity");
      tr.append(th("row-name", row.name));
      vm.cells[i].forEach((cell) => {
        const td = document.createElement("td");
        if (cell.cost === null || cell.quantity === null) {
          td.className = "blocked";
          td.textContent = "—";
        } else {
          td.className = "cell";
          const cost = document.createElement("span");
          cost.className = "cost";
          cost.textContent = cell.cost;
          td.append(cost, this.quantityInput(cell.supplier, cell.destination, cell.quantity));
        }
        tr.append(td);
      });
      tr.append(
        tdText("margin capacity", String(row.capacity)),
        tdText(`margin supplied${row.overCapacity ? " over-capacity" : ""}`, String(row.supplied)),
      );
      tbody.append(tr);
    });
    return tbody;
  }

  private footer(vm: GridViewModel): HTMLTableSectionElement {
    const tfoot = document.createElement("tfoot");
    const delivered = document.createElement("tr");
    delivered.className = "delivered-row";
    delivered.append(th("row-name", "Delivered"));
    for (const column of vm.columns) {
      const td = tdText(`margin delivered${column.shortfall ? " short" : ""}`, String(column.delivered));
      td.dataset.delivered = column.name;
      delivered.append(td);
    }
    delivered.append(tdText("margin", ""), tdText("margin", ""));
    const required = document.createElement("tr");
    required.className = "required-row";
    required.append(th("row-name", "Required"));
    for (const column of vm.columns) {
      required.append(tdText("margin required", String(column.required)));
    }
    required.append(tdText("margin", ""), tdText("margin", ""));
    tfoot.append(delivered, required);
    return tfoot;
  }

  private quantityInput(supplier: string, destination: string, quantity: number): HTMLInputElement {
    const input = document.createElement("input");
    input.className = "qty";
    input.type = "text";
    input.inputMode = "numeric";
    input.value = String(quantity);
    input.dataset.supplier = supplier;
    input.dataset.destination = destination;
    input.dataset.cell = `${supplier}:${destination}`;
    input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") {
        this.commit(input);
      } else if (event.key === "Escape") {
        input.value = String(this.currentQuantity(supplier, destination));
        input.classList.remove("invalid");
      }
    });
    input.addEventListener("blur", () => this.commit(input));
    return input;
  }

  private currentQuantity(supplier: string, destination: string): number {
    if (!this.vm) return 0;
    for (const row of this.vm.cells) {
      for (const cell of row) {
        if (cell.supplier === supplier && cell.destination === destination) {
          return cell.quantity ?? 0;
        }
      }
    }
    return 0;
  }

  private commit(input: HTMLInputElement): void {
    const { supplier = "", destination = "" } = input.dataset;
    const quantity = parseUnitsInput(input.value);
    if (quantity === null) {
      input.classList.add("invalid");
      input.title = "quantities are whole non-negative numbers";
      return;
    }
    input.classList.remove("invalid");
    input.title = "";
    // An Enter commit followed by the blur of the same input must not
    // issue a second call while the first is still in flight.
    if (input.dataset.sent === String(quantity)) return;
    if (quantity === this.currentQuantity(supplier, destination)) {
      input.value = String(quantity);
      return;
    }
    input.dataset.sent = String(quantity);
    this.onCellCommit(supplier, destination, quantity);
  }
}

export function renderTotal(target: HTMLElement, totalCost: string): void {
  target.textContent = groupMoney(totalCost);
}

function th(className: string, text: string): HTMLTableCellElement {
  const cell = document.createElement("th");
  cell.className = className;
  cell.textContent = text;
  return cell;
}

function tdText(className: string, text: string): HTMLTableCellElement {
  const cell = document.createElement("td");
  cell.className = className;
  cell.textContent = text;
  return cell;
}
