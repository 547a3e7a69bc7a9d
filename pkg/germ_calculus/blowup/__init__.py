"""Blow-up charts of the origin of C² and blow-down reconstruction"""

from .charts import (
    Chart,
    NonlocalityWitness,
    blow_up_jet,
    blow_down_reconstruct,
    charts_consistent,
    chart_transition_check,
    divisor_constancy_check,
    nonlocality_witness,
)

__all__ = [
    "Chart",
    "NonlocalityWitness",
    "blow_up_jet",
    "blow_down_reconstruct",
    "charts_consistent",
    "chart_transition_check",
    "divisor_constancy_check",
    "nonlocality_witness",
]
