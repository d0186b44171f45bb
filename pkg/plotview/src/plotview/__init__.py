"""Read-only renderers for bico sweep maps and ground-state profiles.

The scripts consume the CSV/JSON files emitted by the bico CLI and never
recompute any physics.
"""

__version__ = "0.1.0"

from .mapfig import MapPlotResult, plot_map
from .profilefig import ProfileGridResult, plot_profiles
from .readers import read_map_file, read_profile_file

__all__ = [
    "MapPlotResult",
    "ProfileGridResult",
    "plot_map",
    "plot_profiles",
    "read_map_file",
    "read_profile_file",
]
