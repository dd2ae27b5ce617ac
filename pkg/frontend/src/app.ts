import { ApiError, StaleVersionError, type WorkbenchApi } from "./api";
import { groupMoney, parseUnitsInput } from "./format";
import { GridView, renderTotal } from "./grid";
import { StructureForms } from "./forms";
import { SolvePanel } from "./solve";
import { applyCellAck, buildGridViewModel, type GridViewModel } from "./state";
import type { Diagnostic, MutationStep } from "./types";

export interface WorkbenchOptions {
  /** Conflict prompt; defaults to window.confirm. Returning true means
   * "reload the latest version and retry my change". */
  confirmRetry?: (message: string) => boolean;
}

/** Wires the screens together around one rule: the service is the system
 * of record. Every user action issues exactly one write; the numbers on
 * screen always come from the most recent acknowledged response. */
export class Workbench {
  private readonly confirmRetry: (message: string) => boolean;
  private grid!: GridView;
  private forms!: StructureForms;
  private solvePanel!: SolvePanel;
  private scenarioId: string | null = null;
  private vm: GridViewModel | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: WorkbenchApi,
    options: WorkbenchOptions = {},
  ) {
    this.confirmRetry =
      options.confirmRetry ?? ((message) => window.confirm(message) === true);
  }

  mount(): void {
    this.root.innerHTML = `
      <header><h1>Sourcing Plan Workbench</h1></header>
      <section class="loader">
        <textarea id="raw-input" rows="8"
          placeholder="Paste the raw supplier document (CSV) here…"></textarea>
        <div class="loader-controls">
          <input type="file" id="file-input" accept=".csv,.txt" />
          <label>starting quantity <input id="plan-default" value="1000" size="6" /></label>
          <button id="load-btn">Load document</button>
          <label>or open scenario <input id="open-id" size="14" /></label>
          <button id="open-btn">Open</button>
        </div>
        <span id="load-error" class="error" role="alert"></span>
      </section>
      <section id="workbench" hidden>
        <div class="status">
          Scenario <code id="scenario-ref"></code> · version <span id="version"></span>
          <div class="totals">Total Sourcing Cost: <strong id="total-cost"></strong></div>
          <ul id="diagnostics"></ul>
          <span id="action-error" class="error" role="alert"></span>
        </div>
        <div id="grid"></div>
        <div id="solve"></div>
        <div id="forms"></div>
      </section>
    `;
    this.grid = new GridView(this.find("#grid"), (supplier, destination, quantity) => {
      void this.commitCell(supplier, destination, quantity);
    });
    this.forms = new StructureForms(this.find("#forms"), (script, source) => {
      void this.runScript(script, source);
    });
    this.solvePanel = new SolvePanel(
      this.find("#solve"),
      () => void this.previewSolve(),
      () => void this.applySolve(),
    );
    this.find<HTMLButtonElement>("#load-btn").addEventListener("click", () => {
      void this.loadFromTextarea();
    });
    this.find<HTMLButtonElement>("#open-btn").addEventListener("click", () => {
      void this.openById();
    });
    this.find<HTMLInputElement>("#file-input").addEventListener("change", (event) => {
      const file = (event.target as HTMLInputElement).files?.[0];
      if (file) void this.loadFromFile(file);
    });
  }

  private async loadFromTextarea(): Promise<void> {
    const text = this.find<HTMLTextAreaElement>("#raw-input").value;
    if (!text.trim()) {
      this.find("#load-error").textContent = "paste a document or choose a file first";
      return;
    }
    await this.loadDocument(text);
  }

  private async loadFromFile(file: File): Promise<void> {
    const text = await file.text();
    this.find<HTMLTextAreaElement>("#raw-input").value = text;
    await this.loadDocument(text);
  }

  private async loadDocument(text: string): Promise<void> {
    const loadError = this.find("#load-error");
    loadError.textContent = "";
    const planDefault = parseUnitsInput(this.find<HTMLInputElement>("#plan-default").value);
    if (planDefault === null) {
      loadError.textContent = "starting quantity must be a whole number";
      return;
    }
    try {
      const created = await this.api.createScenario(text, planDefault);
      this.scenarioId = created.id;
      await this.refresh(created.version);
    } catch (err) {
      loadError.textContent = describe(err);
    }
  }

  private async openById(): Promise<void> {
    const loadError = this.find("#load-error");
    loadError.textContent = "";
    const id = this.find<HTMLInputElement>("#open-id").value.trim();
    if (!id) {
      loadError.textContent = "enter a scenario id";
      return;
    }
    try {
      const stored = await this.api.getScenario(id);
      this.scenarioId = stored.id;
      await this.refresh(stored.version);
    } catch (err) {
      loadError.textContent = describe(err);
    }
  }

  /** Re-pull the matrix and evaluation and redraw everything. */
  private async refresh(knownVersion?: number): Promise<void> {
    if (!this.scenarioId) return;
    const id = this.scenarioId;
    const version = knownVersion ?? (await this.api.getScenario(id)).version;
    const [matrix, evaluation] = await Promise.all([
      this.api.getMatrix(id),
      this.api.getEvaluation(id),
    ]);
    this.vm = buildGridViewModel(matrix, evaluation, version);
    this.find("#workbench").hidden = false;
    this.find("#scenario-ref").textContent = id;
    this.grid.render(this.vm);
    this.forms.render(
      this.vm.rows.map((row) => row.name),
      this.vm.columns.map((column) => column.name),
    );
    this.solvePanel.render();
    this.renderStatus();
  }

  private renderStatus(): void {
    if (!this.vm) return;
    this.find("#version").textContent = String(this.vm.version);
    renderTotal(this.find("#total-cost"), this.vm.totalCost);
    this.find("#action-error").textContent = "";
    const list = this.find("#diagnostics");
    list.innerHTML = "";
    for (const diagnostic of this.vm.diagnostics) {
      const item = document.createElement("li");
      item.dataset.kind = diagnostic.kind;
      item.dataset.subject = diagnostic.subject;
      item.textContent = describeDiagnostic(diagnostic);
      list.append(item);
    }
  }

  private async commitCell(
    supplier: string,
    destination: string,
    quantity: number,
  ): Promise<void> {
    if (!this.scenarioId || !this.vm) return;
    try {
      const ack = await this.api.setCell(
        this.scenarioId,
        supplier,
        destination,
        quantity,
        this.vm.version,
      );
      this.vm = applyCellAck(this.vm, supplier, destination, quantity, ack);
      this.grid.render(this.vm);
      this.renderStatus();
    } catch (err) {
      if (err instanceof StaleVersionError) {
        const retry = this.confirmRetry(conflictMessage(err));
        await this.refresh();
        if (retry) await this.commitCell(supplier, destination, quantity);
        return;
      }
      this.grid.showCellError(supplier, destination, describe(err));
      this.find("#action-error").textContent = describe(err);
    }
  }

  private async runScript(script: MutationStep[], source: string): Promise<void> {
    if (!this.scenarioId || !this.vm) return;
    try {
      const result = await this.api.applyScript(this.scenarioId, script, this.vm.version);
      await this.refresh(result.version);
    } catch (err) {
      if (err instanceof StaleVersionError) {
        const retry = this.confirmRetry(conflictMessage(err));
        await this.refresh();
        if (retry) await this.runScript(script, source);
        return;
      }
      this.forms.showError(source, describe(err));
    }
  }

  private async previewSolve(): Promise<void> {
    if (!this.scenarioId || !this.vm) return;
    try {
      const result = await this.api.solve(this.scenarioId);
      this.solvePanel.showPreview(result, this.vm);
    } catch (err) {
      this.solvePanel.showMessage(describe(err));
    }
  }

  private async applySolve(): Promise<void> {
    if (!this.scenarioId) return;
    try {
      const result = await this.api.solve(this.scenarioId, { apply: true });
      if (result.status === "optimal") {
        await this.refresh(result.version);
      } else {
        this.solvePanel.showMessage(
          "No feasible plan: requirements cannot be met with these lanes.",
        );
      }
    } catch (err) {
      this.solvePanel.showMessage(describe(err));
    }
  }

  private find<T extends HTMLElement = HTMLElement>(selector: string): T {
    const element = this.root.querySelector<T>(selector);
    if (!element) throw new Error(`missing element ${selector}`);
    return element;
  }
}

function conflictMessage(err: StaleVersionError): string {
  return (
    `This scenario changed on the server (you had version ${err.expected}, ` +
    `it is now ${err.current}). Reload the latest state and retry your change?`
  );
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return err instanceof Error ? err.message : String(err);
}

function describeDiagnostic(diagnostic: Diagnostic): string {
  const amount = groupMoney(String(diagnostic.amount));
  switch (diagnostic.kind) {
    case "capacity_exceeded":
      return `${diagnostic.subject} is over capacity by ${amount} units`;
    case "shortfall":
      return `${diagnostic.subject} is short by ${amount} units`;
    case "surplus":
      return `${diagnostic.subject} is over its requirement by ${amount} units`;
  }
}
