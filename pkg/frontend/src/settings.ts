// Settings form model: validates edits against the same invariants the
// server enforces, so mistakes are rejected inline instead of as HTTP
// errors, and exposes the log export (which is just the session-log
// route, verbatim).

import type { SessionClient, SessionConfig } from "./api.js";

export interface ValidationIssue {
  field: string;
  reason: string;
}

export function validateConfig(config: SessionConfig): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const domain = config.domain;
  if (domain !== undefined) {
    if (domain.length < 2 || domain.length > 10) {
      issues.push({ field: "domain", reason: "needs 2 to 10 values" });
    }
    if (new Set(domain).size !== domain.length) {
      issues.push({ field: "domain", reason: "values must be distinct" });
    }
    if (domain.some((v) => !Number.isInteger(v) || v < 1)) {
      issues.push({ field: "domain", reason: "values must be positive integers" });
    }
  }
  if (config.set_size !== undefined) {
    if (config.set_size < 2 || config.set_size > 5) {
      issues.push({ field: "set_size", reason: "must be between 2 and 5" });
    } else if (domain !== undefined && config.set_size > domain.length) {
      issues.push({ field: "set_size", reason: "cannot exceed the domain size" });
    }
  }
  if (config.trials_per_game !== undefined && config.trials_per_game < 1) {
    issues.push({ field: "trials_per_game", reason: "must be at least 1" });
  }
  if (config.score_boundaries !== undefined) {
    const [b1, b2] = config.score_boundaries;
    if (!(b1 >= 0 && b1 <= b2 && b2 <= 1)) {
      issues.push({
        field: "score_boundaries",
        reason: "need 0 <= lower <= upper <= 1",
      });
    }
  }
  if (config.inter_trial_delay_ms !== undefined && config.inter_trial_delay_ms < 0) {
    issues.push({ field: "inter_trial_delay_ms", reason: "must be >= 0" });
  }
  if (
    config.long_press_threshold_ms !== undefined &&
    config.long_press_threshold_ms <= 0
  ) {
    issues.push({ field: "long_press_threshold_ms", reason: "must be > 0" });
  }
  return issues;
}

export type ExportFormat = "csv" | "txt";

/**
 * The exported bytes are exactly what the session-log endpoint returns
 * for the chosen flavor: the settings view adds nothing and strips
 * nothing, so the download and the endpoint can never diverge.
 */
export async function exportLog(
  client: SessionClient,
  format: ExportFormat = "csv",
): Promise<string> {
  return client.sessionLog(format);
}

export function exportFilename(format: ExportFormat, sessionId: string): string {
  return `session-${sessionId}.${format}`;
}
