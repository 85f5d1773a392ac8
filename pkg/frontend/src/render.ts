import { ByteText } from './bytes.js';
import {
  formatDomainKey,
  formatTuples,
  type AnalysisReport,
  type ClauseAnnotation,
} from './report.js';

export const NO_CALLS = 'no call patterns (goal-independent run)';
export const NO_MODEL = 'no model (typing run)';
export const SPAN_WARNING =
  'report spans do not match the program text; showing it unannotated';

export interface RenderedReport {
  root: HTMLElement;
  /** non-null when the spans failed to line up and the view is plain text */
  warning: string | null;
}

function spansAlign(bytes: ByteText, report: AnalysisReport): boolean {
  let cursor = 0;
  for (const clause of report.clauses) {
    const [start, end] = clause.span;
    if (start < cursor || bytes.slice(start, end) === null) {
      return false;
    }
    let inner = start;
    for (const call of clause.body) {
      const [from, to] = call.span;
      if (from < inner || to > end || bytes.slice(from, to) === null) {
        return false;
      }
      inner = to;
    }
    cursor = end;
  }
  return bytes.slice(cursor, bytes.byteLength) !== null;
}

/**
 * Annotated program view. A marker button precedes each clause head and
 * each body literal; hovering (or focusing, or click-to-pin) shows the
 * pattern tuples for that point together with the domain-element key.
 * Everything displayed comes verbatim from the report.
 */
export function renderReport(source: string, report: AnalysisReport): RenderedReport {
  const bytes = new ByteText(source);
  const root = document.createElement('div');
  root.className = 'report';

  if (!spansAlign(bytes, report)) {
    const warning = document.createElement('div');
    warning.className = 'warning';
    warning.textContent = SPAN_WARNING;
    const plain = document.createElement('pre');
    plain.className = 'program';
    plain.textContent = source;
    root.append(warning, plain);
    return { root, warning: SPAN_WARNING };
  }

  const popover = document.createElement('div');
  popover.className = 'popover';
  popover.hidden = true;
  const tuplesPane = document.createElement('pre');
  tuplesPane.className = 'popover-tuples';
  const keyPane = document.createElement('pre');
  keyPane.className = 'popover-key';
  keyPane.textContent = formatDomainKey(report.domainKey);
  popover.append(tuplesPane, keyPane);

  let pinned: HTMLElement | null = null;

  function show(button: HTMLElement): void {
    tuplesPane.textContent = button.dataset.popover ?? '';
    popover.hidden = false;
    const at = button.getBoundingClientRect();
    popover.style.left = `${at.left + window.scrollX}px`;
    popover.style.top = `${at.bottom + window.scrollY + 4}px`;
  }

  function hide(): void {
    popover.hidden = true;
  }

  function marker(className: string, label: string, content: string): HTMLButtonElement {
    const button = document.createElement('button');
    button.type = 'button';
    button.className = className;
    button.textContent = '▸';
    button.setAttribute('aria-label', label);
    button.dataset.popover = content;
    button.addEventListener('mouseenter', () => {
      if (!pinned) show(button);
    });
    button.addEventListener('mouseleave', () => {
      if (!pinned) hide();
    });
    button.addEventListener('focus', () => {
      if (!pinned) show(button);
    });
    button.addEventListener('blur', () => {
      if (!pinned) hide();
    });
    button.addEventListener('click', () => {
      if (pinned === button) {
        pinned = null;
        hide();
      } else {
        pinned = button;
        show(button);
      }
    });
    return button;
  }

  function renderClause(clause: ClauseAnnotation, index: number): HTMLElement {
    const el = document.createElement('span');
    el.className = clause.headAnnotation?.dead ? 'clause dead' : 'clause';
    const head = clause.headAnnotation;
    el.append(
      marker(
        'marker head-marker',
        `model at clause ${index + 1}`,
        head === null ? NO_MODEL : formatTuples(head.tuples),
      ),
    );
    let cursor = clause.span[0];
    for (const call of clause.body) {
      el.append(bytes.slice(cursor, call.span[0])!);
      el.append(
        marker(
          'marker call-marker',
          `call patterns in clause ${index + 1}`,
          call.callTuples === null ? NO_CALLS : formatTuples(call.callTuples),
        ),
      );
      const literal = document.createElement('span');
      literal.className = call.sliceable ? 'call sliceable' : 'call';
      literal.textContent = bytes.slice(call.span[0], call.span[1])!;
      el.append(literal);
      cursor = call.span[1];
    }
    el.append(bytes.slice(cursor, clause.span[1])!);
    return el;
  }

  const program = document.createElement('pre');
  program.className = 'program';
  let cursor = 0;
  report.clauses.forEach((clause, index) => {
    program.append(bytes.slice(cursor, clause.span[0])!);
    program.append(renderClause(clause, index));
    cursor = clause.span[1];
  });
  program.append(bytes.slice(cursor, bytes.byteLength)!);

  root.append(program, popover);
  return { root, warning: null };
}
