/** Debounced latest-wins request scheduling for the live preview.
 *
 * Requests get a monotonic sequence number; responses that arrive after a
 * newer request has been issued are dropped so the preview never regresses
 * to a stale draft.
 */

export interface Sequencer<T> {
  /** Schedule a request for the current input; resolves handlers later. */
  request(input: T): void;
  /** Cancel anything pending (e.g. on teardown). */
  cancel(): void;
}

export interface SequencerOptions<T, R> {
  send: (input: T) => Promise<R>;
  onResult: (result: R) => void;
  onError?: (error: unknown) => void;
  debounceMs?: number;
  /** Injectable timer hooks for tests. */
  setTimer?: (fn: () => void, ms: number) => unknown;
  clearTimer?: (handle: unknown) => void;
}

export const PREVIEW_DEBOUNCE_MS = 200;

export function createSequencer<T, R>(options: SequencerOptions<T, R>): Sequencer<T> {
  const debounce = options.debounceMs ?? PREVIEW_DEBOUNCE_MS;
  const setTimer = options.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
  const clearTimer = options.clearTimer ?? ((handle) => clearTimeout(handle as number));
  let sequence = 0;
  let pending: unknown = null;

  function fire(input: T): void {
    sequence += 1;
    const issued = sequence;
    options
      .send(input)
      .then((result) => {
        if (issued === sequence) options.onResult(result);
      })
      .catch((error) => {
        if (issued === sequence && options.onError) options.onError(error);
      });
  }

  return {
    request(input: T): void {
      if (pending !== null) clearTimer(pending);
      pending = setTimer(() => {
        pending = null;
        fire(input);
      }, debounce);
    },
    cancel(): void {
      if (pending !== null) clearTimer(pending);
      pending = null;
      sequence += 1; // orphan any in-flight response
    },
  };
}
