/** Wire types, mirroring the service's JSON exactly. Money is always a
 * two-decimal string; quantities and units are plain integers. */

export interface SupplierRow {
  name: string;
  capacity: number;
}

export interface DestinationRow {
  name: string;
  required: number;
}

export interface LaneRow {
  supplier: string;
  destination: string;
  unit_cost: string;
}

export interface PlanEntry {
  supplier: string;
  destination: string;
  quantity: number;
}

export interface ScenarioDoc {
  suppliers: SupplierRow[];
  destinations: DestinationRow[];
  lanes: LaneRow[];
  plan: PlanEntry[];
}

export interface StoredScenario {
  id: string;
  version: number;
  scenario: ScenarioDoc;
}

export type DiagnosticKind = "capacity_exceeded" | "shortfall" | "surplus";

export interface Diagnostic {
  kind: DiagnosticKind;
  subject: string;
  amount: number;
}

export interface Evaluation {
  supplied: Record<string, number>;
  delivered: Record<string, number>;
  excess_capacity: Record<string, number>;
  total_cost: string;
  diagnostics: Diagnostic[];
}

export interface MatrixReport {
  row_labels: string[];
  column_labels: string[];
  cost_cells: (string | null)[][];
  plan_cells: (number | null)[][];
  supplied_margin: number[];
  delivered_margin: number[];
  capacity_margin: number[];
  required_margin: number[];
  total_cost: string;
}

export type SolveStatus = "optimal" | "infeasible";

export interface SolveResponse {
  status: SolveStatus;
  objective: string | null;
  plan: PlanEntry[];
  version: number;
}

export interface MutationStep {
  op: string;
  args: Record<string, unknown>;
}
