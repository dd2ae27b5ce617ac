import type {
  Evaluation,
  MatrixReport,
  MutationStep,
  SolveResponse,
  StoredScenario,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** A write carried a version token the server has already moved past. */
export class StaleVersionError extends ApiError {
  constructor(
    status: number,
    code: string,
    message: string,
    public readonly expected: number,
    public readonly current: number,
  ) {
    super(status, code, message, { expected, current });
    this.name = "StaleVersionError";
  }
}

export interface CreatedScenario {
  id: string;
  version: number;
}

export interface CellAck {
  version: number;
  evaluation: Evaluation;
}

export interface SolveOptions {
  apply?: boolean;
  budgetMs?: number;
}

/** The service surface the workbench uses. The UI never computes a number
 * of record itself; everything displayed comes back through these calls. */
export interface WorkbenchApi {
  createScenario(body: string, planDefault?: number): Promise<CreatedScenario>;
  getScenario(id: string): Promise<StoredScenario>;
  getEvaluation(id: string): Promise<Evaluation>;
  getMatrix(id: string): Promise<MatrixReport>;
  applyScript(id: string, script: MutationStep[], version: number): Promise<{ version: number }>;
  setCell(
    id: string,
    supplier: string,
    destination: string,
    quantity: number,
    version: number,
  ): Promise<CellAck>;
  solve(id: string, options?: SolveOptions): Promise<SolveResponse>;
}

export class ApiClient implements WorkbenchApi {
  constructor(private readonly baseUrl: string = "") {}

  async createScenario(body: string, planDefault?: number): Promise<CreatedScenario> {
    const query = planDefault === undefined ? "" : `?plan_default=${planDefault}`;
    return this.request("POST", `/scenarios${query}`, body);
  }

  async getScenario(id: string): Promise<StoredScenario> {
    return this.request("GET", `/scenarios/${encodeURIComponent(id)}`);
  }

  async getEvaluation(id: string): Promise<Evaluation> {
    return this.request("GET", `/scenarios/${encodeURIComponent(id)}/evaluation`);
  }

  async getMatrix(id: string): Promise<MatrixReport> {
    return this.request("GET", `/scenarios/${encodeURIComponent(id)}/report/matrix`);
  }

  async applyScript(
    id: string,
    script: MutationStep[],
    version: number,
  ): Promise<{ version: number }> {
    return this.request(
      "POST",
      `/scenarios/${encodeURIComponent(id)}/mutations`,
      JSON.stringify(script),
      { "Expected-Version": String(version) },
    );
  }

  async setCell(
    id: string,
    supplier: string,
    destination: string,
    quantity: number,
    version: number,
  ): Promise<CellAck> {
    const path =
      `/scenarios/${encodeURIComponent(id)}` +
      `/plan/${encodeURIComponent(supplier)}/${encodeURIComponent(destination)}`;
    return this.request("PUT", path, String(quantity), {
      "Expected-Version": String(version),
    });
  }

  async solve(id: string, options: SolveOptions = {}): Promise<SolveResponse> {
    const params = new URLSearchParams();
    if (options.apply) params.set("apply", "true");
    if (options.budgetMs !== undefined) params.set("budget_ms", String(options.budgetMs));
    const query = params.toString() ? `?${params}` : "";
    return this.request("POST", `/scenarios/${encodeURIComponent(id)}/solve${query}`);
  }

  private async request<T>(
    method: string,
    path: string,
    body?: string,
    headers: Record<string, string> = {},
  ): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, { method, body, headers });
    } catch (err) {
      throw new ApiError(0, "unreachable", `service unreachable: ${String(err)}`);
    }
    const payload = await response.json().catch(() => null);
    if (response.ok) {
      return payload as T;
    }
    const code = typeof payload?.code === "string" ? payload.code : "unknown_error";
    const message =
      typeof payload?.message === "string" ? payload.message : `HTTP ${response.status}`;
    if (response.status === 409 && code === "stale_version") {
      const detail = payload?.detail ?? {};
      throw new StaleVersionError(409, code, message, detail.expected, detail.current);
    }
    throw new ApiError(response.status, code, message, payload?.detail ?? null);
  }
}
