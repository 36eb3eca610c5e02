# Command groups of the symquandle CLI
from . import invariant, link, quandle, scan, symplectic

COMMAND_GROUPS = (quandle, symplectic, link, invariant, scan)
