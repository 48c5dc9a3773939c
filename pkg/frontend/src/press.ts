// Long-press gating for the settings button. The settings view must be
// unreachable by accidental taps: only a sustained press at or above the
// configured threshold opens it.

export type Clock = () => number;

export class LongPressGate {
  private pressedAt: number | null = null;

  constructor(
    private readonly thresholdMs: number,
    private readonly now: Clock = () => Date.now(),
  ) {
    if (thresholdMs <= 0) {
      throw new RangeError(`threshold must be positive, got ${thresholdMs}`);
    }
  }

  pressStart(): void {
    this.pressedAt = this.now();
  }

  /** Returns the press duration iff it reached the threshold, else null. */
  pressEnd(): number | null {
    if (this.pressedAt === null) {
      return null;
    }
    const duration = this.now() - this.pressedAt;
    this.pressedAt = null;
    return duration >= this.thresholdMs ? duration : null;
  }

  cancel(): void {
    this.pressedAt = null;
  }
}
