import { defineConfig } from "vitest/config";

// Dev server proxies the game service; the client itself only ever
// issues same-origin requests.
export default defineConfig({
  server: {
    proxy: {
      "/games": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "happy-dom",
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
