# runs/management/commands/analyze.py
from ._base import RunCommand


class Command(RunCommand):
    help = "Aggregate Monte Carlo run directories into error-barred and relative-error tables"
    mode = "analyze"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            "inputs",
            nargs="*",
            help="run directories to analyze (analyze.inputs)",
        )
        parser.add_argument("--exact", type=float, help="reference value (analyze.exact)")

    def flag_overrides(self, options):
        flags = super().flag_overrides(options)
        if options.get("inputs"):
            flags["analyze.inputs"] = ", ".join(options["inputs"])
        if options.get("exact") is not None:
            flags["analyze.exact"] = str(options["exact"])
        return flags
