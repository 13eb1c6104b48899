import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'jsdom',
    globalSetup: './test/global-setup.ts',
    testTimeout: 60000,
    hookTimeout: 60000,
  },
});
