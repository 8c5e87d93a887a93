"""
Antifragile planning runtime.

A planning-based agent that classifies plans and systems as fragile, robust
or resilient w.r.t. hazards, and a refined MAPE-K loop that uncovers hidden
actions in response to hazards, with a scenario simulator and the grid-robot
oil-spill case study.
"""

__version__ = "0.1.0"
