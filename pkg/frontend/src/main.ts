import { httpApi } from './api.js';
import { createWorkbench } from './workbench.js';

const bench = createWorkbench(httpApi());
document.body.append(bench.root);
