# runs/management/commands/mc_single.py
from ._base import RunCommand


class Command(RunCommand):
    help = "Path-integral Monte Carlo of a single digitized boson, one CSV per stream"
    mode = "mc-single"
