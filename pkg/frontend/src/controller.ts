// View-independent application logic. The controller owns the session
// client, the long-press gate and the feedback voice; a renderer (canvas,
// DOM, test double) subscribes to view states and forwards touches.
//
// Connectivity loss surfaces as a "paused" view instead of an exception:
// an animal mid-session must never face a crashed screen.

import {
  DISPLAY_MODES,
  type DisplayMode,
  type SessionClient,
  type SessionConfig,
  type SessionSnapshot,
} from "./api.js";
import { glyphFor, layoutSlots, type DiscRadiusLaw, type GlyphSpec, type SlotRegion } from "./glyphs.js";
import { LongPressGate, type Clock } from "./press.js";
import { FeedbackVoice } from "./speech.js";

export interface ModeCard {
  mode: DisplayMode;
  label: string;
}

export interface TrialView {
  kind: "trial";
  mode: DisplayMode;
  regions: SlotRegion[];
  glyphs: GlyphSpec[];
  trialInGame: number;
  trialsPerGame: number;
}

export type ViewState =
  | { kind: "menu"; cards: ModeCard[] }
  | TrialView
  | { kind: "settings" }
  | { kind: "ended"; correct: number; total: number }
  | { kind: "paused"; reason: string };

export type ViewListener = (view: ViewState) => void;

export interface ControllerOptions {
  screenWidth?: number;
  screenHeight?: number;
  discLaw?: DiscRadiusLaw;
  voice?: FeedbackVoice;
  now?: Clock; // injectable for deterministic press timing in tests
}

export class GameController {
  private snapshot: SessionSnapshot | null = null;
  private listeners: ViewListener[] = [];
  private gate: LongPressGate | null = null;
  private readonly width: number;
  private readonly height: number;
  private readonly discLaw: DiscRadiusLaw;
  private readonly voice: FeedbackVoice;
  private readonly now: Clock;

  constructor(
    private readonly client: SessionClient,
    options: ControllerOptions = {},
  ) {
    this.width = options.screenWidth ?? 1280;
    this.height = options.screenHeight ?? 800;
    this.discLaw = options.discLaw ?? "sqrt";
    this.voice = options.voice ?? new FeedbackVoice(null, null);
    this.now = options.now ?? (() => Date.now());
  }

  onView(listener: ViewListener): void {
    this.listeners.push(listener);
  }

  get view(): ViewState {
    return this.toView();
  }

  async start(config: SessionConfig = {}): Promise<void> {
    await this.guard(async () => {
      this.snapshot = await this.client.create(config);
      this.gate = new LongPressGate(
        this.snapshot.long_press_threshold_ms,
        this.now,
      );
    });
  }

  menuCards(): ModeCard[] {
    return DISPLAY_MODES.map((mode) => ({ mode, label: mode }));
  }

  async touchCard(mode: DisplayMode): Promise<void> {
    await this.apply({ type: "select_mode", mode });
  }

  async touchScreen(x: number, y: number): Promise<void> {
    const snapshot = this.snapshot;
    if (snapshot === null || snapshot.pending === null) {
      return; // touches outside an active trial are ignored
    }
    const regions = layoutSlots(
      snapshot.pending.values.length,
      this.width,
      this.height,
    );
    const slot = regions.find(
      (r) => x >= r.x && x < r.x + r.width && y >= r.y && y < r.y + r.height,
    );
    if (slot === undefined) {
      return;
    }
    await this.apply({ type: "touch_slot", slot: slot.slot });
  }

  async touchExit(): Promise<void> {
    await this.apply({ type: "exit" });
  }

  async continuePlaying(): Promise<void> {
    await this.apply({ type: "continue" });
  }

  settingsPressStart(): void {
    this.gate?.pressStart();
  }

  /** Release of the settings button; opens settings only past threshold. */
  async settingsPressEnd(): Promise<void> {
    const duration = this.gate?.pressEnd() ?? null;
    if (duration === null) {
      return;
    }
    await this.apply({ type: "long_press", duration_ms: duration });
  }

  private async apply(
    input: Parameters<SessionClient["send"]>[0],
  ): Promise<void> {
    await this.guard(async () => {
      this.snapshot = await this.client.send(input);
      this.voice.speakAll(await this.client.drainEvents());
    });
  }

  private async guard(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.notify(this.toView());
    } catch (err) {
      if (err instanceof TypeError || isNetworkError(err)) {
        this.notify({ kind: "paused", reason: "connection lost" });
        return;
      }
      throw err;
    }
  }

  private toView(): ViewState {
    const snapshot = this.snapshot;
    if (snapshot === null) {
      return { kind: "paused", reason: "no session" };
    }
    switch (snapshot.phase) {
      case "menu":
        return { kind: "menu", cards: this.menuCards() };
      case "settings":
        return { kind: "settings" };
      case "ended":
        return {
          kind: "ended",
          correct: snapshot.correct_in_game,
          total: snapshot.trial_in_game,
        };
      case "in_game": {
        const pending = snapshot.pending;
        if (pending === null) {
          return { kind: "paused", reason: "no pending trial" };
        }
        const domainMax = Math.max(...snapshot.domain);
        return {
          kind: "trial",
          mode: pending.mode,
          regions: layoutSlots(pending.values.length, this.width, this.height),
          glyphs: pending.values.map((v) =>
            glyphFor(pending.mode, v, domainMax, this.discLaw),
          ),
          trialInGame: snapshot.trial_in_game,
          trialsPerGame: snapshot.trials_per_game,
        };
      }
    }
  }

  private notify(view: ViewState): void {
    for (const listener of this.listeners) {
      listener(view);
    }
  }
}

function isNetworkError(err: unknown): boolean {
  return err instanceof Error && /fetch|network|ECONNREFUSED/i.test(err.message);
}
