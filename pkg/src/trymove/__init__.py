"""Try to Move: headless rehabilitation puzzle-game engine and analysis suite.

Subsystems: gesture taxonomy, seeded polycube puzzle generation, the
event-sourced play engine, muscle-weighted scoring, a from-scratch
convolutional gesture classifier with synthetic frames, session log
analytics, a CLI, and a local play service.
"""

__version__ = "0.1.0"
