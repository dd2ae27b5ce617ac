import { defineConfig } from "vite";

// The UI talks to the sourcing-plan service through same-origin paths;
// in development the dev server proxies them to a locally running
// `sourceplan serve` (default port 7411).
export default defineConfig({
  server: {
    proxy: {
      "/scenarios": {
        target: "http://127.0.0.1:7411",
        changeOrigin: true,
      },
    },
  },
});
