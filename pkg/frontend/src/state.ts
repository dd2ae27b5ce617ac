import type { CellAck } from "./api";
import type { Diagnostic, Evaluation, MatrixReport } from "./types";

/** Client-side mirror of one matrix report plus violation flags and the
 * version token it was built for. Every number in here came from a service
 * response; the model is rebuilt or patched only from acknowledged calls. */

export interface GridCell {
  supplier: string;
  destination: string;
  /** Unit cost as money text; null means the pair has no lane (blocked). */
  cost: string | null;
  /** Planned quantity; null on blocked cells, never editable there. */
  quantity: number | null;
}

export interface GridRow {
  name: string;
  capacity: number;
  supplied: number;
  overCapacity: boolean;
}

export interface GridColumn {
  name: string;
  required: number;
  delivered: number;
  shortfall: boolean;
}

export interface GridViewModel {
  version: number;
  rows: GridRow[];
  columns: GridColumn[];
  cells: GridCell[][];
  totalCost: string;
  diagnostics: Diagnostic[];
}

function violationSubjects(diagnostics: Diagnostic[], kind: Diagnostic["kind"]): Set<string> {
  return new Set(diagnostics.filter((d) => d.kind === kind).map((d) => d.subject));
}

export function buildGridViewModel(
  matrix: MatrixReport,
  evaluation: Evaluation,
  version: number,
): GridViewModel {
  const overCapacity = violationSubjects(evaluation.diagnostics, "capacity_exceeded");
  const short = violationSubjects(evaluation.diagnostics, "shortfall");
  const rows = matrix.row_labels.map((name, i) => ({
    name,
    capacity: matrix.capacity_margin[i],
    supplied: matrix.supplied_margin[i],
    overCapacity: overCapacity.has(name),
  }));
  const columns = matrix.column_labels.map((name, j) => ({
    name,
    required: matrix.required_margin[j],
    delivered: matrix.delivered_margin[j],
    shortfall: short.has(name),
  }));
  const cells = matrix.row_labels.map((supplier, i) =>
    matrix.column_labels.map((destination, j) => ({
      supplier,
      destination,
      cost: matrix.cost_cells[i][j],
      quantity: matrix.plan_cells[i][j],
    })),
  );
  return {
    version,
    rows,
    columns,
    cells,
    totalCost: matrix.total_cost,
    diagnostics: evaluation.diagnostics,
  };
}

/** Fold a single-cell edit acknowledgement into the model: the committed
 * quantity plus the margins, total, and diagnostics the service returned
 * with it. Structure (rows, columns, lanes) is untouched by definition. */
export function applyCellAck(
  vm: GridViewModel,
  supplier: string,
  destination: string,
  quantity: number,
  ack: CellAck,
): GridViewModel {
  const { evaluation } = ack;
  const overCapacity = violationSubjects(evaluation.diagnostics, "capacity_exceeded");
  const short = violationSubjects(evaluation.diagnostics, "shortfall");
  return {
    version: ack.version,
    rows: vm.rows.map((row) => ({
      ...row,
      supplied: evaluation.supplied[row.name] ?? 0,
      overCapacity: overCapacity.has(row.name),
    })),
    columns: vm.columns.map((column) => ({
      ...column,
      delivered: evaluation.delivered[column.name] ?? 0,
      shortfall: short.has(column.name),
    })),
    cells: vm.cells.map((row) =>
      row.map((cell) =>
        cell.supplier === supplier && cell.destination === destination
          ? { ...cell, quantity }
          : cell,
      ),
    ),
    totalCost: evaluation.total_cost,
    diagnostics: evaluation.diagnostics,
  };
}
