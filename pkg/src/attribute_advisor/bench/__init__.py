from .generator import DensitySpec, cmd_gen, draw_costs, generate, generate_dataset
from .plans import BenchPlan, load_plan, load_plans, plan_from_dict
from .runner import BenchRunner, cmd_bench, has_timeouts, summarize

__all__ = [
    "BenchPlan",
    "BenchRunner",
    "DensitySpec",
    "cmd_bench",
    "cmd_gen",
    "draw_costs",
    "generate",
    "generate_dataset",
    "has_timeouts",
    "load_plan",
    "load_plans",
    "plan_from_dict",
    "summarize",
]
