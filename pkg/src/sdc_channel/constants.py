"""Physical constants."""

from scipy.constants import speed_of_light

C0: float = float(speed_of_light)
"""Speed of light in vacuum, m/s."""
