// Typed client for the game service HTTP+JSON protocol.

import { GameSnapshot, validateSnapshot } from "./schema.js";

export interface CreateGameRequest {
  board: { builder: string; colors?: number[]; base_vertex?: number };
  sites: string | number[][];
  players: string[];
}

export interface WinnerResponse {
  player: number | null;
  component?: number[];
  facet_pair?: number[];
}

export type MoveResult =
  | { kind: "ok"; state: GameSnapshot }
  | { kind: "conflict"; message: string }
  | { kind: "rejected"; message: string };

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class GameApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async json(response: Response): Promise<unknown> {
    const text = await response.text();
    try {
      return text ? JSON.parse(text) : null;
    } catch {
      throw new ApiError(`invalid JSON from server: ${text.slice(0, 80)}`, response.status);
    }
  }

  async createGame(request: CreateGameRequest): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/games`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    const body = (await this.json(response)) as { game_id?: string; detail?: unknown };
    if (!response.ok || !body?.game_id) {
      throw new ApiError(`create failed: ${JSON.stringify(body?.detail ?? body)}`,
        response.status);
    }
    return body.game_id;
  }

  async getState(gameId: string): Promise<GameSnapshot> {
    const response = await this.fetchImpl(`${this.baseUrl}/games/${gameId}`);
    const body = await this.json(response);
    if (!response.ok) {
      throw new ApiError(`state failed: ${JSON.stringify(body)}`, response.status);
    }
    return validateSnapshot(body);
  }

  async postMove(
    gameId: string,
    move: { player: number; cell: number; expected_version: number },
  ): Promise<MoveResult> {
    const response = await this.fetchImpl(`${this.baseUrl}/games/${gameId}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(move),
    });
    const body = (await this.json(response)) as { detail?: { message?: string } };
    if (response.status === 409) {
      return { kind: "conflict", message: body?.detail?.message ?? "version conflict" };
    }
    if (!response.ok) {
      return { kind: "rejected", message: body?.detail?.message ?? `HTTP ${response.status}` };
    }
    return { kind: "ok", state: validateSnapshot(body) };
  }

  async getWinner(gameId: string): Promise<WinnerResponse> {
    const response = await this.fetchImpl(`${this.baseUrl}/games/${gameId}/winner`);
    const body = await this.json(response);
    if (!response.ok) {
      throw new ApiError(`winner failed: ${JSON.stringify(body)}`, response.status);
    }
    return body as WinnerResponse;
  }
}
