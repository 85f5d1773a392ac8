import {
  ApiError,
  type AnalysisResult,
  type AnalyzeRequest,
  type Api,
  type ExampleEntry,
} from './api.js';
import { renderReport } from './render.js';
import type { AnalysisReport } from './report.js';

export interface Workbench {
  root: HTMLElement;
  /** settles once the example listing request finished, either way */
  ready: Promise<void>;
}

/**
 * Preview of what chaining will analyse against: the inferred rules with
 * every type parameter widened to dynamic. Display only; the chained run
 * itself goes through POST /chain and the server redoes the conversion.
 */
export function regularTypeText(inferred: string): string {
  const rules = inferred
    .split('\n')
    .filter((line) => line.includes('-->'))
    .map(widenParameters);
  return rules.length === 0 ? '' : rules.join('\n') + '\n';
}

function widenParameters(rule: string): string {
  // quoted atoms may contain capitals and must survive untouched
  return rule
    .split(/('(?:[^'\\]|\\.)*')/)
    .map((part, i) =>
      i % 2 === 1 ? part : part.replace(/\b[A-Z_][A-Za-z0-9_]*\b/g, 'dynamic'),
    )
    .join('');
}

export function createWorkbench(api: Api): Workbench {
  const root = document.createElement('div');
  root.className = 'workbench';
  root.innerHTML = `
    <section class="inputs">
      <label class="field">Example
        <select class="example-picker"><option value="">(scratch)</option></select>
      </label>
      <label class="field">Program
        <textarea class="program-input" rows="14" spellcheck="false"></textarea>
      </label>
      <label class="field">Types
        <textarea class="types-input" rows="6" spellcheck="false"></textarea>
      </label>
      <fieldset class="contextual">
        <legend>Contextual kinds</legend>
        <label><input type="checkbox" value="static"> static</label>
        <label><input type="checkbox" value="nonvar"> nonvar</label>
        <label><input type="checkbox" value="var"> var</label>
      </fieldset>
      <label class="field">Engine
        <select class="engine-picker">
          <option value="dm">dm: least domain model</option>
          <option value="wt">wt: well-typing</option>
          <option value="rta">rta: regular approximation</option>
        </select>
      </label>
      <label class="field">Goal
        <input class="goal-input" spellcheck="false" placeholder="rev(list,dynamic)">
      </label>
      <button class="run" type="button">Analyse</button>
    </section>
    <section class="output">
      <div class="error-banner" hidden></div>
      <div class="status" hidden></div>
      <div class="view"></div>
      <section class="inferred" hidden>
        <h2>Inferred types</h2>
        <pre class="inferred-text"></pre>
        <button class="convert" type="button" hidden>Convert to regular type</button>
        <button class="compute" type="button" hidden>Compute Domain Model</button>
      </section>
    </section>
  `;

  const pick = <T extends Element>(selector: string): T =>
    root.querySelector(selector) as T;
  const examplePicker = pick<HTMLSelectElement>('.example-picker');
  const programInput = pick<HTMLTextAreaElement>('.program-input');
  const typesInput = pick<HTMLTextAreaElement>('.types-input');
  const enginePicker = pick<HTMLSelectElement>('.engine-picker');
  const goalInput = pick<HTMLInputElement>('.goal-input');
  const runButton = pick<HTMLButtonElement>('.run');
  const banner = pick<HTMLDivElement>('.error-banner');
  const status = pick<HTMLDivElement>('.status');
  const view = pick<HTMLDivElement>('.view');
  const inferredSection = pick<HTMLElement>('.inferred');
  const inferredText = pick<HTMLPreElement>('.inferred-text');
  const convertButton = pick<HTMLButtonElement>('.convert');
  const computeButton = pick<HTMLButtonElement>('.compute');

  let pending = false;
  let lastRequest: AnalyzeRequest | null = null;
  let lastReport: AnalysisReport | null = null;
  let lastResultId: string | null = null;
  let examples: ExampleEntry[] = [];

  function collect(): AnalyzeRequest {
    const contextual = [...root.querySelectorAll<HTMLInputElement>('.contextual input')]
      .filter((box) => box.checked)
      .map((box) => box.value);
    const goal = goalInput.value.trim();
    return {
      program: programInput.value,
      types: typesInput.value,
      contextual,
      engine: enginePicker.value,
      goal: goal === '' ? null : goal,
    };
  }

  function fail(err: unknown): void {
    banner.textContent = err instanceof Error ? err.message : String(err);
    banner.hidden = false;
  }

  function describe(report: AnalysisReport): string {
    const engine = report.engine;
    const parts = [`engine ${engine.name}`, `types ${engine.typesSource}`];
    if (engine.chainedFrom !== null) {
      parts.push(`chained from ${engine.chainedFrom}`);
    }
    if (engine.goal !== null) {
      parts.push(`goal ${engine.goal}`);
    }
    return parts.join(' | ');
  }

  function showReport(report: AnalysisReport): void {
    lastReport = report;
    status.textContent = describe(report);
    status.hidden = false;
    view.replaceChildren(renderReport(lastRequest?.program ?? '', report).root);
    const inferred = report.inferredTypes;
    inferredSection.hidden = inferred === null;
    inferredText.textContent = inferred ?? '';
    const chainable = report.engine.name === 'wt' || report.engine.name === 'rta';
    convertButton.hidden = !chainable || inferred === null;
    computeButton.hidden = true;
  }

  // one analysis in flight at a time; results land in the order they ran
  async function submit(go: () => Promise<AnalysisResult>): Promise<void> {
    if (pending) {
      return;
    }
    pending = true;
    runButton.disabled = true;
    computeButton.disabled = true;
    banner.hidden = true;
    try {
      const { report, resultId } = await go();
      lastResultId = resultId;
      showReport(report);
    } catch (err) {
      fail(err);
    } finally {
      pending = false;
      runButton.disabled = false;
      computeButton.disabled = false;
    }
  }

  runButton.addEventListener('click', () => {
    const request = collect();
    lastRequest = request;
    void submit(() => api.analyze(request));
  });

  convertButton.addEventListener('click', () => {
    if (lastReport === null || lastReport.inferredTypes === null) {
      return;
    }
    typesInput.value = regularTypeText(lastReport.inferredTypes);
    computeButton.hidden = false;
  });

  computeButton.addEventListener('click', () => {
    const base = lastRequest;
    if (base === null) {
      return;
    }
    void submit(async () => {
      if (lastResultId !== null) {
        try {
          return await api.chain({ resultId: lastResultId });
        } catch (err) {
          const stale = err instanceof ApiError && err.status === 404;
          if (!stale) {
            throw err;
          }
          // evicted from the server cache in the meantime: send the text again
        }
      }
      return api.chain(base);
    });
  });

  examplePicker.addEventListener('change', () => {
    const entry = examples.find((e) => e.name === examplePicker.value);
    if (entry === undefined) {
      return;
    }
    programInput.value = entry.program;
    typesInput.value = entry.types;
    goalInput.value = entry.goal ?? '';
    for (const box of root.querySelectorAll<HTMLInputElement>('.contextual input')) {
      box.checked = entry.contextual.includes(box.value);
    }
  });

  const ready = api
    .examples()
    .then((entries) => {
      examples = entries;
      for (const entry of entries) {
        const option = document.createElement('option');
        option.value = entry.name;
        option.textContent = entry.name;
        option.title = entry.description;
        examplePicker.append(option);
      }
    })
    .catch(fail);

  return { root, ready };
}
