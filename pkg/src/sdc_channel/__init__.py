"""SDC-Channel: geometric-stochastic channel simulation with semi-deterministic clusters."""

__version__ = "0.1.0"
