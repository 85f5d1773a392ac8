function utf8Width(codePoint: number): number {
  if (codePoint < 0x80) return 1;
  if (codePoint < 0x800) return 2;
  if (codePoint < 0x10000) return 3;
  return 4;
}

/**
 * Source text addressable by UTF-8 byte offsets.
 *
 * Report spans count bytes of the submitted program; DOM strings count
 * UTF-16 units. Offsets that land inside a code point are rejected.
 */
export class ByteText {
  private readonly unitAt = new Map<number, number>();
  readonly byteLength: number;

  constructor(readonly text: string) {
    let byte = 0;
    let unit = 0;
    for (const ch of text) {
      this.unitAt.set(byte, unit);
      byte += utf8Width(ch.codePointAt(0)!);
      unit += ch.length;
    }
    this.unitAt.set(byte, unit);
    this.byteLength = byte;
  }

  /** null when an offset is out of range or not on a character boundary. */
  slice(start: number, end: number): string | null {
    const from = this.unitAt.get(start);
    const to = this.unitAt.get(end);
    if (from === undefined || to === undefined || from > to) {
      return null;
    }
    return this.text.slice(from, to);
  }
}
