"""Random inputs, reference oracles, JSON documents and verification scenarios"""

from .random_jets import generate_random_jet, random_environment, random_even_jet, random_implicit_input
from .oracles import substitution_oracle
from .scenarios import HEURISTIC_NOTE, SCENARIOS, CheckResult, ScenarioReport, run_checks, scenario_names
from .runner import ScenarioRunner, ScenarioTask, run_scenario

__all__ = [
    "generate_random_jet",
    "random_environment",
    "random_even_jet",
    "random_implicit_input",
    "substitution_oracle",
    "HEURISTIC_NOTE",
    "SCENARIOS",
    "CheckResult",
    "ScenarioReport",
    "run_checks",
    "scenario_names",
    "ScenarioRunner",
    "ScenarioTask",
    "run_scenario",
]
