import type { CellAck, CreatedScenario, SolveOptions, WorkbenchApi } from "../src/api";
import type {
  Evaluation,
  MatrixReport,
  MutationStep,
  SolveResponse,
  StoredScenario,
} from "../src/types";

declare module "vitest" {
  export interface ProvidedContext {
    serviceUrl: string;
    rawDocument: string;
  }
}

export async function waitFor(
  predicate: () => boolean,
  what = "condition",
  timeoutMs = 15_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!predicate()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 20));
  }
}

/** 2×2 fixture: supplier A over capacity, destination X short, (A,Y) blocked. */
export function makeMatrix(overrides: Partial<MatrixReport> = {}): MatrixReport {
  return {
    row_labels: ["A", "B"],
    column_labels: ["X", "Y"],
    cost_cells: [
      ["1.00", null],
      ["2.00", "3.50"],
    ],
    plan_cells: [
      [12, null],
      [0, 3],
    ],
    supplied_margin: [12, 3],
    delivered_margin: [12, 3],
    capacity_margin: [10, 9],
    required_margin: [14, 3],
    total_cost: "2250.00",
    ...overrides,
  };
}

export function makeEvaluation(overrides: Partial<Evaluation> = {}): Evaluation {
  return {
    supplied: { A: 12, B: 3 },
    delivered: { X: 12, Y: 3 },
    excess_capacity: { A: -2, B: 6 },
    total_cost: "2250.00",
    diagnostics: [
      { kind: "capacity_exceeded", subject: "A", amount: 2 },
      { kind: "shortfall", subject: "X", amount: 2 },
    ],
    ...overrides,
  };
}

type SetCellResult = CellAck | Error;

/** Canned service double for unit-testing the workbench wiring. Responses
 * are queued per call; queue exhaustion keeps returning the last one. */
export class FakeApi implements WorkbenchApi {
  calls: string[] = [];
  version = 1;
  matrix: MatrixReport = makeMatrix();
  evaluation: Evaluation = makeEvaluation();
  setCellResults: SetCellResult[] = [];
  applyScriptResults: (Error | null)[] = [];

  async createScenario(_body: string, _planDefault?: number): Promise<CreatedScenario> {
    this.calls.push("createScenario");
    return { id: "fake-id", version: this.version };
  }

  async getScenario(id: string): Promise<StoredScenario> {
    this.calls.push("getScenario");
    return {
      id,
      version: this.version,
      scenario: { suppliers: [], destinations: [], lanes: [], plan: [] },
    };
  }

  async getEvaluation(_id: string): Promise<Evaluation> {
    this.calls.push("getEvaluation");
    return this.evaluation;
  }

  async getMatrix(_id: string): Promise<MatrixReport> {
    this.calls.push("getMatrix");
    return this.matrix;
  }

  async applyScript(
    _id: string,
    _script: MutationStep[],
    _version: number,
  ): Promise<{ version: number }> {
    this.calls.push("applyScript");
    const result = this.applyScriptResults.shift() ?? null;
    if (result instanceof Error) throw result;
    this.version += 1;
    return { version: this.version };
  }

  async setCell(
    _id: string,
    _supplier: string,
    _destination: string,
    _quantity: number,
    _version: number,
  ): Promise<CellAck> {
    this.calls.push("setCell");
    const result = this.setCellResults.shift();
    if (result instanceof Error) throw result;
    if (result) {
      this.version = result.version;
      return result;
    }
    this.version += 1;
    return { version: this.version, evaluation: this.evaluation };
  }

  async solve(_id: string, options: SolveOptions = {}): Promise<SolveResponse> {
    this.calls.push(options.apply ? "solve(apply)" : "solve");
    return { status: "optimal", objective: "100.00", plan: [], version: this.version };
  }

  callCount(name: string): number {
    return this.calls.filter((call) => call === name).length;
  }
}
