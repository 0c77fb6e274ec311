import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    environment: "node",
    // The e2e test spawns a real figedit server and waits for it to come up.
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
