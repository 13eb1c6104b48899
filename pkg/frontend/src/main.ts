import { ApiClient } from './api.js';
import { Studio } from './studio.js';

// The service is assumed same-origin; ?api=http://host:port points the
// studio at another base (the service itself sets no CORS headers, so a
// cross-origin base needs a proxy in front).
function apiBase(): string {
  try {
    return new URLSearchParams(window.location.search).get('api') ?? '';
  } catch {
    return '';
  }
}

function storage(): Storage | null {
  try {
    return window.localStorage;
  } catch {
    return null;
  }
}

const root = document.getElementById('studio-root');
if (root) {
  new Studio({ root, api: new ApiClient(apiBase()), storage: storage() });
}
