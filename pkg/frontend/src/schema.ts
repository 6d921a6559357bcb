// Payload types for the game service protocol, with runtime validation.
// The UI refuses to render anything that fails validation: a schema mismatch
// produces an error banner, never a partial board.

export interface FacetInfo {
  id: number;
  name: string;
  color: number;
}

export interface CellInfo {
  id: number;
  owner: number | null;
  facet_contacts: number[];
  site: number[];
  polygon?: number[][];
  wireframe?: number[][][];
  site_projected?: number[];
}

export interface TargetInfo {
  primary: number;
  others: number[];
}

export type GameStatus = "ongoing" | "won" | "exhausted";

export interface GameSnapshot {
  version: number;
  dim: number;
  polytope: string;
  num_players: number;
  players: string[];
  turn: number | null;
  status: GameStatus;
  winner: number | null;
  winning_component: number[];
  winning_pair: number[] | null;
  facets: FacetInfo[];
  targets: Record<string, TargetInfo>;
  cells: CellInfo[];
}

export class SchemaError extends Error {}

function fail(path: string, want: string, got: unknown): never {
  throw new SchemaError(`${path}: expected ${want}, got ${JSON.stringify(got)}`);
}

function isNumberArray(x: unknown): x is number[] {
  return Array.isArray(x) && x.every((v) => typeof v === "number");
}

function checkCell(raw: unknown, index: number): CellInfo {
  if (typeof raw !== "object" || raw === null) fail(`cells[${index}]`, "object", raw);
  const c = raw as Record<string, unknown>;
  if (typeof c.id !== "number") fail(`cells[${index}].id`, "number", c.id);
  if (c.owner !== null && typeof c.owner !== "number") {
    fail(`cells[${index}].owner`, "number|null", c.owner);
  }
  if (!isNumberArray(c.facet_contacts)) {
    fail(`cells[${index}].facet_contacts`, "number[]", c.facet_contacts);
  }
  if (!isNumberArray(c.site)) fail(`cells[${index}].site`, "number[]", c.site);
  if (c.polygon !== undefined) {
    if (!Array.isArray(c.polygon) || !c.polygon.every(isNumberArray)) {
      fail(`cells[${index}].polygon`, "number[][]", c.polygon);
    }
  }
  if (c.wireframe !== undefined) {
    if (
      !Array.isArray(c.wireframe) ||
      !c.wireframe.every((f) => Array.isArray(f) && f.every(isNumberArray))
    ) {
      fail(`cells[${index}].wireframe`, "number[][][]", c.wireframe);
    }
  }
  return c as unknown as CellInfo;
}

export function validateSnapshot(raw: unknown): GameSnapshot {
  if (typeof raw !== "object" || raw === null) fail("payload", "object", raw);
  const s = raw as Record<string, unknown>;
  if (typeof s.version !== "number") fail("version", "number", s.version);
  if (typeof s.dim !== "number") fail("dim", "number", s.dim);
  if (typeof s.num_players !== "number") fail("num_players", "number", s.num_players);
  if (s.status !== "ongoing" && s.status !== "won" && s.status !== "exhausted") {
    fail("status", "ongoing|won|exhausted", s.status);
  }
  if (s.turn !== null && typeof s.turn !== "number") fail("turn", "number|null", s.turn);
  if (s.winner !== null && typeof s.winner !== "number") {
    fail("winner", "number|null", s.winner);
  }
  if (!isNumberArray(s.winning_component)) {
    fail("winning_component", "number[]", s.winning_component);
  }
  if (!Array.isArray(s.facets)) fail("facets", "array", s.facets);
  for (const f of s.facets as unknown[]) {
    const ff = f as Record<string, unknown>;
    if (typeof ff?.id !== "number" || typeof ff?.color !== "number") {
      fail("facets[]", "{id, color}", f);
    }
  }
  if (typeof s.targets !== "object" || s.targets === null) {
    fail("targets", "object", s.targets);
  }
  if (!Array.isArray(s.cells)) fail("cells", "array", s.cells);
  const cells = (s.cells as unknown[]).map(checkCell);
  const dim = s.dim as number;
  cells.forEach((c, i) => {
    if (dim === 2 && !c.polygon) fail(`cells[${i}].polygon`, "present for dim 2", undefined);
    if (dim === 3 && !c.wireframe) fail(`cells[${i}].wireframe`, "present for dim 3", undefined);
  });
  return raw as GameSnapshot;
}

// Canonical JSON (recursively sorted keys) hashed with FNV-1a; stable across
// platforms, used to compare client and server views of the same state.
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (typeof value === "object" && value !== null) {
    const obj = value as Record<string, unknown>;
    const keys = Object.keys(obj).sort();
    return (
      "{" + keys.map((k) => JSON.stringify(k) + ":" + canonicalJson(obj[k])).join(",") + "}"
    );
  }
  return JSON.stringify(value);
}

export function stableHash(value: unknown): string {
  const text = canonicalJson(value);
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash.toString(16).padStart(8, "0");
}
