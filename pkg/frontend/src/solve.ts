import { groupMoney } from "./format";
import type { GridViewModel } from "./state";
import type { SolveResponse } from "./types";

/** Solver controls plus the preview pane: the optimal plan rendered lane
 * by lane next to the currently planned quantities. Apply is enabled only
 * once a preview came back optimal. */
export class SolvePanel {
  private controls: HTMLDivElement | null = null;
  private pane: HTMLDivElement | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly onPreview: () => void,
    private readonly onApply: () => void,
  ) {}

  render(): void {
    this.root.innerHTML = "";
    this.controls = document.createElement("div");
    this.controls.className = "solve-controls";
    const preview = document.createElement("button");
    preview.dataset.action = "solve-preview";
    preview.textContent = "Preview optimal plan";
    preview.addEventListener("click", () => this.onPreview());
    const apply = document.createElement("button");
    apply.dataset.action = "solve-apply";
    apply.textContent = "Apply optimal plan";
    apply.disabled = true;
    apply.addEventListener("click", () => this.onApply());
    this.controls.append(preview, apply);
    this.pane = document.createElement("div");
    this.pane.className = "solve-pane";
    this.root.append(this.controls, this.pane);
  }

  showPreview(result: SolveResponse, vm: GridViewModel): void {
    if (!this.pane) return;
    this.pane.innerHTML = "";
    if (result.status !== "optimal" || result.objective === null) {
      this.setApplyEnabled(false);
      this.showMessage("No feasible plan: requirements cannot be met with these lanes.");
      return;
    }
    const optimal = new Map(
      result.plan.map((entry) => [`${entry.supplier}:${entry.destination}`, entry.quantity]),
    );
    const heading = document.createElement("p");
    heading.className = "solve-summary";
    heading.innerHTML =
      `Optimal cost <strong data-field="objective">${groupMoney(result.objective)}</strong>` +
      ` vs current <strong>${groupMoney(vm.totalCost)}</strong>`;
    const table = document.createElement("table");
    table.className = "solve-compare";
    const head = table.createTHead().insertRow();
    for (const text of ["Supplier", "Destination", "Current", "Optimal"]) {
      const cell = document.createElement("th");
      cell.textContent = text;
      head.append(cell);
    }
    const body = table.createTBody();
    for (const row of vm.cells) {
      for (const cell of row) {
        if (cell.quantity === null) continue;
        const target = optimal.get(`${cell.supplier}:${cell.destination}`) ?? 0;
        const tr = body.insertRow();
        tr.insertCell().textContent = cell.supplier;
        tr.insertCell().textContent = cell.destination;
        tr.insertCell().textContent = String(cell.quantity);
        const optCell = tr.insertCell();
        optCell.textContent = String(target);
        if (target !== cell.quantity) tr.className = "changed";
      }
    }
    this.pane.append(heading, table);
    this.setApplyEnabled(true);
  }

  showMessage(text: string): void {
    if (!this.pane) return;
    this.pane.innerHTML = "";
    const note = document.createElement("p");
    note.className = "solve-note";
    note.textContent = text;
    this.pane.append(note);
  }

  clearPreview(): void {
    if (this.pane) this.pane.innerHTML = "";
    this.setApplyEnabled(false);
  }

  private setApplyEnabled(enabled: boolean): void {
    const apply = this.controls?.querySelector<HTMLButtonElement>('[data-action="solve-apply"]');
    if (apply) apply.disabled = !enabled;
  }
}
