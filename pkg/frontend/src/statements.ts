/** Literal argument of a statement: reals, strings, bools, or flat lists of reals/strings. */
export type Literal = number | string | boolean | number[] | string[];

/** Raised when a value cannot be written as a statement literal. */
export class LiteralError extends Error {}

export function formatReal(value: number): string {
  if (!Number.isFinite(value)) {
    throw new LiteralError("statement reals must be finite");
  }
  // String() is the shortest round-tripping decimal; the server accepts
  // both plain and exponent forms and canonicalizes on emit.
  return String(value);
}

export function formatString(value: string): string {
  if (/[\r\n]/.test(value)) {
    throw new LiteralError("statement strings cannot contain line breaks");
  }
  return '"' + value.replace(/\\/g, "\\\\").replace(/"/g, '\\"') + '"';
}

export function formatLiteral(value: Literal): string {
  if (typeof value === "number") return formatReal(value);
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "string") return formatString(value);
  return "[" + value.map((item) => formatLiteral(item)).join(", ") + "]";
}

/** One statement line for a path, method and literal arguments. */
export function statement(path: string, method: string, args: Literal[]): string {
  return `${path}.${method}(${args.map(formatLiteral).join(", ")})`;
}
