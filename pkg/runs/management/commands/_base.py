# runs/management/commands/_base.py
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from digitization.exceptions import TruncationError
from runs.config import parse_overrides, read_config_file
from runs.runner import execute
from runs.serializers import flatten_errors, parse_config


class RunCommand(BaseCommand):
    """Shared flags and error handling of the four run commands."""

    mode = None

    def add_arguments(self, parser):
        parser.add_argument("--config", help="flat key = value run config file")
        parser.add_argument("--out", help="output directory (output.directory)")
        parser.add_argument("--seed", type=int, help="base seed (schedule.base_seed)")
        parser.add_argument("--streams", type=int, help="streams per point (schedule.n_streams)")
        parser.add_argument("--sweeps", type=int, help="recorded sweeps per stream (schedule.n_sweeps)")
        parser.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one config key; repeatable",
        )

    def flag_overrides(self, options):
        flags = {
            "output.directory": options.get("out"),
            "schedule.base_seed": options.get("seed"),
            "schedule.n_streams": options.get("streams"),
            "schedule.n_sweeps": options.get("sweeps"),
        }
        return {key: str(value) for key, value in flags.items() if value is not None}

    def load_config(self, options):
        try:
            values = read_config_file(options["config"]) if options.get("config") else {}
            overrides = {**parse_overrides(options.get("set")), **self.flag_overrides(options)}
            return parse_config(self.mode, values, overrides)
        except OSError as exc:
            raise CommandError(f"cannot read config: {exc}") from exc
        except serializers.ValidationError as exc:
            raise CommandError("invalid config:\n  " + "\n  ".join(flatten_errors(exc.detail))) from exc

    def handle(self, *args, **options):
        config = self.load_config(options)
        self.stdout.write(f"Running {self.mode} ({config.label})...")
        try:
            record, written = execute(config)
        except (TruncationError, OSError) as exc:
            raise CommandError(f"{self.mode} failed: {exc}") from exc
        except serializers.ValidationError as exc:
            raise CommandError(
                f"{self.mode} failed:\n  " + "\n  ".join(flatten_errors(exc.detail))
            ) from exc
        for path in written:
            self.stdout.write(f"  wrote {path}")
        self.stdout.write(
            self.style.SUCCESS(f"✓ Run #{record.id} completed in {record.duration:.1f}s")
        )
