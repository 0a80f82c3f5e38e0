/**
 * Model behind the query-by-sketch grid: alpha rows by omega columns of
 * toggleable cells. Row r stands for letter index r ('a' + r); the
 * renderer draws row alpha-1 at the top so higher letters sit higher.
 *
 * Submission trims the drawing to the span between the first and last
 * non-empty columns — interior empty columns mean "any letter there",
 * exterior ones are not part of the pattern at all (matching is
 * substring-based server-side).
 */
export class SketchGrid {
  private readonly on: boolean[][];

  constructor(readonly alpha: number, readonly omega: number) {
    if (alpha < 2 || omega < 1) throw new Error(`bad grid shape ${alpha}x${omega}`);
    this.on = Array.from({ length: alpha }, () => new Array<boolean>(omega).fill(false));
  }

  toggle(letter: number, column: number): void {
    this.check(letter, column);
    this.on[letter][column] = !this.on[letter][column];
  }

  isSet(letter: number, column: number): boolean {
    this.check(letter, column);
    return this.on[letter][column];
  }

  private check(letter: number, column: number): void {
    if (letter < 0 || letter >= this.alpha || column < 0 || column >= this.omega) {
      throw new Error(`cell (${letter}, ${column}) outside ${this.alpha}x${this.omega} grid`);
    }
  }

  clear(): void {
    for (const row of this.on) row.fill(false);
  }

  isEmpty(): boolean {
    return this.on.every((row) => row.every((cell) => !cell));
  }

  /** Per-column selected letter sets over the trimmed span, ready to submit. */
  columns(): number[][] {
    const all: number[][] = [];
    for (let c = 0; c < this.omega; c++) {
      const letters: number[] = [];
      for (let l = 0; l < this.alpha; l++) if (this.on[l][c]) letters.push(l);
      all.push(letters);
    }
    let first = all.findIndex((col) => col.length > 0);
    if (first < 0) return [];
    let last = all.length - 1;
    while (all[last].length === 0) last--;
    return all.slice(first, last + 1);
  }

  /**
   * Human preview of the compiled pattern: a bare letter for a single
   * choice, a sorted character class for several, and the full-alphabet
   * class for an interior "any" column.
   */
  preview(): string {
    const everything = Array.from({ length: this.alpha }, (_, l) => letterOf(l)).join("");
    return this.columns()
      .map((col) => {
        if (col.length === 0) return `[${everything}]`;
        if (col.length === 1) return letterOf(col[0]);
        return `[${col.map(letterOf).join("")}]`;
      })
      .join("");
  }
}

export function letterOf(index: number): string {
  return String.fromCharCode(97 + index);
}
