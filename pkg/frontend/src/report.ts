/** Shapes of the JSON analysis report served by POST /analyze and /chain. */

export type EngineName = 'dm' | 'wt' | 'rta';

export interface EngineInfo {
  name: EngineName;
  goal: string | null;
  contextual: string[];
  typesSource: 'user' | 'contextual' | 'inferred' | 'chained';
  chainedFrom: EngineName | null;
}

export interface DomainEntry {
  index: number;
  types: string[];
}

export interface HeadAnnotation {
  tuples: number[][];
  dead: boolean;
}

export interface CallAnnotation {
  span: [number, number];
  callTuples: number[][] | null;
  sliceable: boolean;
}

export interface ClauseAnnotation {
  span: [number, number];
  headAnnotation: HeadAnnotation | null;
  body: CallAnnotation[];
}

export interface AnalysisReport {
  engine: EngineInfo;
  domainKey: DomainEntry[];
  clauses: ClauseAnnotation[];
  inferredTypes: string | null;
}

export function formatTuple(tuple: number[]): string {
  return `(${tuple.join(',')})`;
}

/** Empty models and call patterns print as "(none)", one tuple per line otherwise. */
export function formatTuples(tuples: number[][]): string {
  if (tuples.length === 0) {
    return '(none)';
  }
  return tuples.map(formatTuple).join('\n');
}

/** The key already omits the catch-all element, so {} means "anything else". */
export function formatDomainKey(key: DomainEntry[]): string {
  return key.map((entry) => `${entry.index} = {${entry.types.join(', ')}}`).join('\n');
}
