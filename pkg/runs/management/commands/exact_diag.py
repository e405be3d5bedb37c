# runs/management/commands/exact_diag.py
from ._base import RunCommand


class Command(RunCommand):
    help = "Thermal expectation values of a single digitized boson by exact diagonalization"
    mode = "exact-diag"
