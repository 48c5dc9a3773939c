import { describe, expect, it } from "vitest";

import { FeedbackVoice, parseEventLine } from "../src/speech.js";

describe("parseEventLine", () => {
  it("splits timestamp, kind and word", () => {
    expect(parseEventLine("1652979738000 session_started dice")).toEqual({
      timestampMs: 1652979738000,
      kind: "session_started",
      word: "dice",
    });
    expect(parseEventLine("5 game_ended(high) great").kind).toBe(
      "game_ended(high)",
    );
  });

  it("rejects malformed lines", () => {
    expect(() => parseEventLine("no timestamp here")).toThrow();
  });
});

describe("FeedbackVoice", () => {
  it("speaks the configured word when a speaker exists", () => {
    const spoken: string[] = [];
    const voice = new FeedbackVoice({ speak: (w) => spoken.push(w) }, null);
    voice.speakAll([
      "1 trial_correct good",
      "2 trial_incorrect no",
      "3 game_ended(high) great",
    ]);
    expect(spoken).toEqual(["good", "no", "great"]);
  });

  it("falls back to distinct tones without a speaker", () => {
    const beeps: number[] = [];
    const voice = new FeedbackVoice(null, {
      beep: (hz) => beeps.push(hz),
    });
    voice.speakAll(["1 trial_correct good", "2 trial_incorrect no"]);
    expect(beeps).toHaveLength(2);
    expect(beeps[0]).not.toBe(beeps[1]);
  });

  it("maps tiered game endings onto the game-ended tone", () => {
    const beeps: number[] = [];
    const voice = new FeedbackVoice(null, { beep: (hz) => beeps.push(hz) });
    voice.speakAll(["1 game_ended(low) again", "2 game_ended(high) great"]);
    expect(beeps[0]).toBe(beeps[1]);
  });

  it("stays silent with neither speaker nor beeper", () => {
    const voice = new FeedbackVoice(null, null);
    expect(() => voice.speakAll(["1 trial_correct good"])).not.toThrow();
  });
});
