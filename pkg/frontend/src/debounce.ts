// Per-key trailing debounce; a new call supersedes the pending one.
export class Debouncer<K> {
  private handles = new Map<K, ReturnType<typeof setTimeout>>();

  constructor(public waitMs = 50) {}

  get size(): number {
    return this.handles.size;
  }

  debounce(key: K, op: () => void): void {
    const pending = this.handles.get(key);
    if (pending !== undefined) clearTimeout(pending);
    this.handles.set(
      key,
      setTimeout(() => {
        this.handles.delete(key);
        op();
      }, this.waitMs),
    );
  }

  cancel(key: K): void {
    const pending = this.handles.get(key);
    if (pending !== undefined) {
      clearTimeout(pending);
      this.handles.delete(key);
    }
  }

  cancelAll(): void {
    for (const handle of this.handles.values()) clearTimeout(handle);
    this.handles.clear();
  }
}
