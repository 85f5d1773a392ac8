"""Type-based analysis workbench for pure logic programs."""
from .bundled import EXAMPLES, Example, get_example
from .errors import (DegenerateSignatureError, GoalSyntaxError, InputError,
                     InternalError, ProgramSyntaxError, ReservedNameError,
                     ResourceLimitError, SourcePositionError, ToolError,
                     TypeSyntaxError, UndeclaredTypeError)
from .fta import (CONTEXTUAL_KINDS, DFTA, DYNAMIC, FTA, Transition, accepts,
                  complete_with_dynamic, contextual_transitions, determinize,
                  dfta_as_fta, empty_states, format_fta, parse_type_defs)
from .infer import (RegularApprox, WellTyping, check_welltyping,
                    format_regular_approx, format_welltyping, infer_rta,
                    infer_welltyping, to_regular_types)
from .model import (ALL_TUPLES, ERROR_ON_USE, BuiltinPolicy, PreInterpretation,
                    clause_contributions, empty_predicates, least_model,
                    pre_interpretation)
from .pipeline import ENGINES, AnalysisRequest, request_id, run_analysis
from .qa import (DeadCode, QAResult, TypedGoal, analyze_goal, dead_code,
                 qa_transform)
from .report import (AnalysisReport, BodyAnnotation, ClauseAnnotation,
                     EngineInfo, HeadAnnotation, KeyEntry, build_report, emit,
                     read_report)
from .syntax import (Clause, Program, Struct, Term, Var, format_program,
                     format_term, parse_program, parse_term, parse_typed_goal,
                     signature_of)

__version__ = "0.1.0"
