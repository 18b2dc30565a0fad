from .interactive import InteractionTrace, StepRecord, evaluate_interactive, system_prompt
from .static import StaticScore, evaluate_static

__all__ = [
    "InteractionTrace",
    "StaticScore",
    "StepRecord",
    "evaluate_interactive",
    "evaluate_static",
    "system_prompt",
]
