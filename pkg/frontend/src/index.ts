export * from "./api.js";
export * from "./glyphs.js";
export * from "./press.js";
export * from "./speech.js";
export * from "./settings.js";
export * from "./controller.js";
