import type { Literal } from "./statements.js";

/** A statement line split into its parts, enough to preview it locally. */
export interface ParsedStatement {
  path: string;
  method: string;
  args: Literal[];
}

export interface FractionRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export class StatementParseError extends Error {}

const NUMBER_RE = /^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?/;

/**
 * Parse one statement line as returned by the drag endpoint.
 * Handles strings with escapes, bools, numbers in plain or exponent form,
 * and one level of list nesting.
 */
export function parseStatement(text: string): ParsedStatement {
  const paren = text.indexOf("(");
  // The path itself contains "(" in "figure(1)", so find the call paren:
  // it is the first "(" after the last "." outside brackets.
  const lastDot = text.lastIndexOf(".", text.indexOf("(", text.indexOf(")")));
  const callParen = text.indexOf("(", lastDot);
  if (paren < 0 || lastDot < 0 || callParen < 0) {
    throw new StatementParseError("not a statement: " + text);
  }
  const path = text.slice(0, lastDot);
  const method = text.slice(lastDot + 1, callParen);
  if (!/^[a-z_][a-z0-9_]*$/.test(method)) {
    throw new StatementParseError("bad method name: " + method);
  }

  let i = callParen + 1;

  function skipSpace(): void {
    while (i < text.length && text[i] === " ") i += 1;
  }

  function parseValue(depth: number): Literal {
    skipSpace();
    const ch = text[i];
    if (ch === '"') {
      i += 1;
      let out = "";
      while (i < text.length && text[i] !== '"') {
        if (text[i] === "\\") {
          const esc = text[i + 1];
          if (esc !== "\\" && esc !== '"') {
            throw new StatementParseError("bad escape in string");
          }
          out += esc;
          i += 2;
        } else {
          out += text[i];
          i += 1;
        }
      }
      if (text[i] !== '"') throw new StatementParseError("unterminated string");
      i += 1;
      return out;
    }
    if (ch === "[") {
      if (depth > 0) throw new StatementParseError("nested lists are not statements");
      i += 1;
      const items: Literal[] = [];
      skipSpace();
      if (text[i] === "]") {
        i += 1;
        return [] as number[];
      }
      for (;;) {
        items.push(parseValue(depth + 1));
        skipSpace();
        if (text[i] === ",") {
          i += 1;
          continue;
        }
        if (text[i] === "]") {
          i += 1;
          return items as number[] | string[];
        }
        throw new StatementParseError("expected , or ] in list");
      }
    }
    if (text.startsWith("true", i)) {
      i += 4;
      return true;
    }
    if (text.startsWith("false", i)) {
      i += 5;
      return false;
    }
    const match = NUMBER_RE.exec(text.slice(i));
    if (!match) throw new StatementParseError("expected a literal at " + text.slice(i));
    i += match[0].length;
    return Number(match[0]);
  }

  const args: Literal[] = [];
  skipSpace();
  if (text[i] !== ")") {
    for (;;) {
      args.push(parseValue(0));
      skipSpace();
      if (text[i] === ",") {
        i += 1;
        continue;
      }
      break;
    }
  }
  if (text[i] !== ")") throw new StatementParseError("expected ) at end of statement");
  if (text.slice(i + 1).trim() !== "") {
    throw new StatementParseError("trailing text after statement");
  }
  return { path, method, args };
}

/** Figure-fraction rect carried by a set_position([x, y, w, h]) preview, if any. */
export function previewRect(parsed: ParsedStatement): FractionRect | null {
  if (parsed.method !== "set_position" || parsed.args.length !== 1) return null;
  const rect = parsed.args[0];
  if (!Array.isArray(rect) || rect.length !== 4 || rect.some((v) => typeof v !== "number")) {
    return null;
  }
  const [x, y, w, h] = rect as number[];
  return { x, y, w, h };
}

/** Anchor point carried by a two-real preview (text position, legend loc). */
export function previewPoint(parsed: ParsedStatement): { x: number; y: number } | null {
  if (parsed.method !== "set_position" && parsed.method !== "set_loc_fraction") return null;
  if (parsed.args.length !== 2) return null;
  const [x, y] = parsed.args;
  if (typeof x !== "number" || typeof y !== "number") return null;
  return { x, y };
}
