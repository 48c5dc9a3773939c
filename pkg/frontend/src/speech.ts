// Spoken feedback for the experimenter. Events arrive from the session's
// event stream as `<timestamp> <kind> <word>` lines; the word is the only
// thing vocalized. Platforms without speech synthesis get distinct tones
// per event kind instead.

export interface ParsedEvent {
  timestampMs: number;
  kind: string;
  word: string;
}

export function parseEventLine(line: string): ParsedEvent {
  const match = /^(\d+) (\S+) (.+)$/.exec(line);
  if (!match) {
    throw new Error(`unparseable event line: ${line}`);
  }
  return {
    timestampMs: Number(match[1]),
    kind: match[2],
    word: match[3],
  };
}

export interface Speaker {
  speak(word: string): void;
}

export interface ToneBeeper {
  beep(frequencyHz: number, durationMs: number): void;
}

// One tone per event kind so the experimenter can still tell outcomes
// apart when no voice is available.
const TONE_HZ: Record<string, number> = {
  session_started: 440,
  trial_correct: 880,
  trial_incorrect: 330,
  game_ended: 660,
  exit_requested: 523,
};

function baseKind(kind: string): string {
  // "game_ended(high)" -> "game_ended"
  const paren = kind.indexOf("(");
  return paren === -1 ? kind : kind.slice(0, paren);
}

export function defaultSpeaker(): Speaker | null {
  try {
    if (typeof window !== "undefined" && "speechSynthesis" in window) {
      return {
        speak(word: string) {
          window.speechSynthesis.speak(new SpeechSynthesisUtterance(word));
        },
      };
    }
  } catch {
    // fall through to the tone path
  }
  return null;
}

export class FeedbackVoice {
  constructor(
    private readonly speaker: Speaker | null = defaultSpeaker(),
    private readonly beeper: ToneBeeper | null = null,
  ) {}

  speak(event: ParsedEvent): void {
    if (this.speaker !== null) {
      this.speaker.speak(event.word);
      return;
    }
    if (this.beeper !== null) {
      this.beeper.beep(TONE_HZ[baseKind(event.kind)] ?? 440, 200);
    }
  }

  speakAll(lines: string[]): void {
    for (const line of lines) {
      this.speak(parseEventLine(line));
    }
  }
}
