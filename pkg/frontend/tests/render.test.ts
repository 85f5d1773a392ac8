import { describe, expect, it } from 'vitest';
import { NO_CALLS, NO_MODEL, SPAN_WARNING, renderReport } from '../src/render.js';
import { formatTuples, type AnalysisReport } from '../src/report.js';
import transposeFixture from './fixtures/transpose.json';
import deadsliceFixture from './fixtures/deadslice.json';
import cafeFixture from './fixtures/cafe.json';
import appendWtFixture from './fixtures/append_wt.json';

interface Fixture {
  source: string;
  report: AnalysisReport;
}

const transpose = transposeFixture as unknown as Fixture;
const deadslice = deadsliceFixture as unknown as Fixture;
const cafe = cafeFixture as unknown as Fixture;
const appendWt = appendWtFixture as unknown as Fixture;

const MARKER = '▸';

function hover(marker: Element): void {
  marker.dispatchEvent(new MouseEvent('mouseenter'));
}

function unhover(marker: Element): void {
  marker.dispatchEvent(new MouseEvent('mouseleave'));
}

function headMarkers(root: HTMLElement): HTMLElement[] {
  return [...root.querySelectorAll<HTMLElement>('.head-marker')];
}

function callMarkers(root: HTMLElement): HTMLElement[] {
  return [...root.querySelectorAll<HTMLElement>('.call-marker')];
}

function popover(root: HTMLElement): HTMLElement {
  return root.querySelector<HTMLElement>('.popover')!;
}

function tuplesText(root: HTMLElement): string {
  return root.querySelector('.popover-tuples')!.textContent ?? '';
}

function keyText(root: HTMLElement): string {
  return root.querySelector('.popover-key')!.textContent ?? '';
}

function copy(fixture: Fixture): Fixture {
  return JSON.parse(JSON.stringify(fixture)) as Fixture;
}

describe('renderReport', () => {
  it('puts one marker before every clause head and body literal', () => {
    const { root, warning } = renderReport(transpose.source, transpose.report);
    expect(warning).toBeNull();
    expect(headMarkers(root)).toHaveLength(6);
    expect(callMarkers(root)).toHaveLength(5);
  });

  it('reproduces the program text exactly around the markers', () => {
    for (const fixture of [transpose, deadslice, cafe, appendWt]) {
      const { root } = renderReport(fixture.source, fixture.report);
      const shown = root.querySelector('pre.program')!.textContent ?? '';
      expect(shown.split(MARKER).join('')).toBe(fixture.source);
    }
  });

  it('hovering a head marker shows its model and the domain key', () => {
    const { root } = renderReport(transpose.source, transpose.report);
    const marker = headMarkers(root)[0];
    expect(popover(root).hidden).toBe(true);
    hover(marker);
    expect(popover(root).hidden).toBe(false);
    expect(tuplesText(root)).toBe('(2,2)');
    expect(keyText(root)).toBe('1 = {}\n2 = {matrix, row}\n3 = {row}');
    unhover(marker);
    expect(popover(root).hidden).toBe(true);
  });

  it('popover content equals the serialized annotation for every head', () => {
    const { root } = renderReport(transpose.source, transpose.report);
    const markers = headMarkers(root);
    transpose.report.clauses.forEach((clause, i) => {
      hover(markers[i]);
      expect(tuplesText(root)).toBe(formatTuples(clause.headAnnotation!.tuples));
      unhover(markers[i]);
    });
    hover(markers[3]);
    expect(tuplesText(root)).toBe('(2,2,2)\n(2,3,2)\n(3,2,3)\n(3,3,3)');
  });

  it('slices body literals out of the clause text', () => {
    const { root } = renderReport(transpose.source, transpose.report);
    const literals = [...root.querySelectorAll('.call')].map((el) => el.textContent);
    expect(literals).toEqual([
      'nullrows(Xss)',
      'makerow(Xss,Ys,Zss)',
      'transpose(Zss,Yss)',
      'makerow(Yss,Ys,Xss)',
      'nullrows(Ns)',
    ]);
  });

  it('renders dead clauses and sliceable calls red', () => {
    const { root } = renderReport(deadslice.source, deadslice.report);
    expect(root.querySelectorAll('.clause.dead')).toHaveLength(3);
    const sliceable = root.querySelectorAll('.call.sliceable');
    expect(sliceable).toHaveLength(1);
    expect(sliceable[0].textContent).toBe('t(X)');
  });

  it('shows query patterns on body markers of a goal run', () => {
    const { root } = renderReport(deadslice.source, deadslice.report);
    const markers = callMarkers(root);
    hover(markers[0]);
    expect(tuplesText(root)).toBe('(1)');
    unhover(markers[0]);
    hover(markers[1]);
    expect(tuplesText(root)).toBe('(none)');
    const dead = headMarkers(root)[0];
    hover(dead);
    expect(tuplesText(root)).toBe('(none)');
    expect(keyText(root)).toBe('1 = {}');
  });

  it('says when call patterns were not computed', () => {
    const { root } = renderReport(transpose.source, transpose.report);
    hover(callMarkers(root)[0]);
    expect(tuplesText(root)).toBe(NO_CALLS);
  });

  it('says when a typing run has no per-clause model', () => {
    const { root } = renderReport(appendWt.source, appendWt.report);
    hover(headMarkers(root)[0]);
    expect(tuplesText(root)).toBe(NO_MODEL);
    expect(keyText(root)).toBe('');
  });

  it('keeps byte offsets straight through multibyte text', () => {
    const { root, warning } = renderReport(cafe.source, cafe.report);
    expect(warning).toBeNull();
    const clauses = [...root.querySelectorAll('.clause')];
    expect(clauses[0].textContent!.split(MARKER).join('')).toBe("'café'('naïve').");
    expect(root.querySelector('.call')!.textContent).toBe("'café'(X)");
  });

  it('click pins the popover until clicked again', () => {
    const { root } = renderReport(transpose.source, transpose.report);
    const markers = headMarkers(root);
    markers[0].dispatchEvent(new MouseEvent('click'));
    expect(popover(root).hidden).toBe(false);
    expect(tuplesText(root)).toBe('(2,2)');
    hover(markers[3]);
    expect(tuplesText(root)).toBe('(2,2)');
    markers[0].dispatchEvent(new MouseEvent('click'));
    expect(popover(root).hidden).toBe(true);
  });

  it('falls back to plain text when a span is off a character boundary', () => {
    const broken = copy(cafe);
    broken.report.clauses[0].span = [1, 5];
    const { root, warning } = renderReport(broken.source, broken.report);
    expect(warning).toBe(SPAN_WARNING);
    expect(root.querySelector('.warning')!.textContent).toBe(SPAN_WARNING);
    expect(root.querySelectorAll('.marker')).toHaveLength(0);
    expect(root.querySelector('pre.program')!.textContent).toBe(broken.source);
  });

  it('falls back when spans overlap or escape their clause', () => {
    const overlapping = copy(transpose);
    overlapping.report.clauses[1].span[0] = 10;
    expect(renderReport(overlapping.source, overlapping.report).warning).toBe(SPAN_WARNING);

    const escaping = copy(transpose);
    escaping.report.clauses[0].body[0].span = [21, 40];
    expect(renderReport(escaping.source, escaping.report).warning).toBe(SPAN_WARNING);
  });
});
