# runs/management/commands/mc_lattice.py
from ._base import RunCommand


class Command(RunCommand):
    help = "Cluster Monte Carlo of a digitized scalar field on a periodic lattice"
    mode = "mc-lattice"
