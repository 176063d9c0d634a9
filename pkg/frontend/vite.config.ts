import { defineConfig } from 'vitest/config';

export default defineConfig({
  build: {
    outDir: 'dist',
  },
  server: {
    proxy: {
      // dev server forwards API calls to a locally running gateway
      '/sessions': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
    include: ['tests/**/*.test.ts'],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
