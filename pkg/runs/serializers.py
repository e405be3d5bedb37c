# runs/serializers.py
from rest_framework import serializers

from digitization.exceptions import TruncationError
from lattice.geometry import LatticeGeometry, MomentumMode
from mcmc.observables import resolve_observables
from mcmc.params import delta_for_hop_ratio, slices_for

from .config import MODES, RunConfig, grid_for, model_for, params_for
from .models import AggregateRecord, RunRecord, StreamRecord

DEFAULT_LAMBDA = 2001


class CommaSeparatedField(serializers.ListField):
    """A list written as ``a, b, c`` in the config file."""

    separator = ","

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [item.strip() for item in data.split(self.separator) if item.strip()]
        return super().to_internal_value(data)


class ModeListField(CommaSeparatedField):
    """Momentum labels ``l1,l2; l1,l2``."""

    separator = ";"

    def __init__(self, **kwargs):
        super().__init__(child=serializers.CharField(), **kwargs)


class RunSectionSerializer(serializers.Serializer):
    label = serializers.CharField(required=False, max_length=200)
    mode = serializers.ChoiceField(choices=MODES, required=False)


class PhysicsSerializer(serializers.Serializer):
    potential = serializers.ChoiceField(choices=["quartic", "lattice"], required=False)
    m_squared = CommaSeparatedField(
        child=serializers.FloatField(), required=False, allow_empty=False
    )
    dims = serializers.IntegerField(min_value=1, default=2)
    extent = serializers.IntegerField(min_value=2, default=4)

    def get_fields(self):
        """``lambda`` is a keyword, so it cannot be a class attribute."""
        fields = super().get_fields()
        fields["lambda"] = serializers.FloatField(min_value=0.0, default=1.0)
        return fields


class DigitizationSerializer(serializers.Serializer):
    r = serializers.FloatField(required=False)
    a_dig = CommaSeparatedField(child=serializers.FloatField(), required=False, allow_empty=False)
    r_over_a = serializers.IntegerField(min_value=1, required=False)

    def get_fields(self):
        fields = super().get_fields()
        fields["lambda"] = serializers.IntegerField(min_value=2, required=False)
        return fields

    def validate_r(self, value):
        if value <= 0:
            raise serializers.ValidationError("R must be positive")
        return value

    def validate_a_dig(self, value):
        if any(a <= 0 for a in value):
            raise serializers.ValidationError("every a_dig must be positive")
        return value


class TrotterSerializer(serializers.Serializer):
    delta = serializers.FloatField(required=False)
    beta = serializers.FloatField(required=False)
    temperature = serializers.FloatField(required=False)
    b_max = serializers.IntegerField(min_value=1, required=False)
    hop_ratio = serializers.FloatField(required=False)

    def validate_delta(self, value):
        if value <= 0:
            raise serializers.ValidationError("delta must be positive")
        return value

    def validate_beta(self, value):
        if value <= 0:
            raise serializers.ValidationError("beta must be positive")
        return value

    def validate_temperature(self, value):
        if value <= 0:
            raise serializers.ValidationError("temperature must be positive")
        return value

    def validate_hop_ratio(self, value):
        if not 0 < value <= 0.01:
            raise serializers.ValidationError("hop_ratio must lie in (0, 0.01]")
        return value


class ScheduleSerializer(serializers.Serializer):
    n_sweeps = serializers.IntegerField(min_value=1, default=10000)
    n_streams = serializers.IntegerField(min_value=1, default=4)
    base_seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, default=0)
    measure_every = serializers.IntegerField(min_value=1, default=1)
    burn_in = serializers.IntegerField(min_value=0, default=0)


class ObservablesSerializer(serializers.Serializer):
    names = CommaSeparatedField(child=serializers.CharField(), required=False)
    modes = ModeListField(required=False)


class ExactDiagSerializer(serializers.Serializer):
    n_levels = serializers.IntegerField(min_value=0, default=0)
    check_sufficiency = serializers.BooleanField(default=True)


class AnalyzeSerializer(serializers.Serializer):
    inputs = CommaSeparatedField(child=serializers.CharField(), required=False)
    exact = serializers.FloatField(required=False)
    min_length_factor = serializers.FloatField(min_value=0.0, required=False)


class OutputSerializer(serializers.Serializer):
    directory = serializers.CharField(required=False)


class RunConfigSerializer(serializers.Serializer):
    """
    Validates a flat run configuration for one mode.

    Input is the parsed ``section.key = value`` dict; each section is its own
    nested serializer, so errors come back keyed by section and key. Pass the
    mode in the serializer context.
    """

    SECTIONS = {
        "run": RunSectionSerializer,
        "physics": PhysicsSerializer,
        "digitization": DigitizationSerializer,
        "trotter": TrotterSerializer,
        "schedule": ScheduleSerializer,
        "observables": ObservablesSerializer,
        "exact_diag": ExactDiagSerializer,
        "analyze": AnalyzeSerializer,
        "output": OutputSerializer,
    }
    # written into manifest.cfg next to the config echo, skipped on the way back in
    MANIFEST_SECTIONS = ("version", "point", "stats")

    def get_fields(self):
        return {name: cls(required=False) for name, cls in self.SECTIONS.items()}

    @property
    def mode(self):
        return self.context["mode"]

    def to_internal_value(self, data):
        nested = {}
        unknown = {}
        for key, value in data.items():
            section, _, name = key.partition(".")
            if section in self.MANIFEST_SECTIONS:
                continue
            cls = self.SECTIONS.get(section)
            if cls is None or name not in cls().get_fields():
                unknown[key] = "unknown key"
                continue
            nested.setdefault(section, {})[name] = value
        if unknown:
            raise serializers.ValidationError(unknown)
        # sections left out still get their defaults
        for section in self.SECTIONS:
            nested.setdefault(section, {})
        return super().to_internal_value(nested)

    def validate(self, data):
        if self.mode not in MODES:
            raise serializers.ValidationError({"mode": f"unknown mode {self.mode!r}"})
        if data["run"].setdefault("mode", self.mode) != self.mode:
            raise serializers.ValidationError(
                {"run.mode": f"config is for {data['run']['mode']}, not {self.mode}"}
            )
        data["run"].setdefault("label", self.mode)
        if self.mode == "analyze":
            return self._validate_analyze(data)
        self._validate_physics(data["physics"])
        self._validate_digitization(data["digitization"])
        self._validate_trotter(data["trotter"])
        self._validate_observables(data)
        self._validate_points(data)
        return data

    def _validate_analyze(self, data):
        if not data["analyze"].get("inputs"):
            raise serializers.ValidationError(
                {"analyze.inputs": "at least one run directory is required"}
            )
        return data

    def _validate_physics(self, physics):
        default = "lattice" if self.mode == "mc-lattice" else "quartic"
        physics.setdefault("potential", default)
        physics.setdefault("m_squared", [1.0])
        if self.mode == "mc-lattice" and physics["potential"] != "lattice":
            raise serializers.ValidationError(
                {"physics.potential": "mc-lattice needs the lattice potential"}
            )
        if self.mode != "mc-lattice" and physics["potential"] == "lattice":
            raise serializers.ValidationError(
                {"physics.potential": f"{self.mode} handles a single boson only"}
            )

    def _validate_digitization(self, digitization):
        has_r = digitization.get("r") is not None
        has_a = bool(digitization.get("a_dig"))
        if has_r == has_a:
            raise serializers.ValidationError(
                {"digitization.r": "give exactly one of digitization.r or digitization.a_dig"}
            )
        if has_r and digitization.get("r_over_a") is not None:
            raise serializers.ValidationError(
                {"digitization.r_over_a": "r_over_a only applies together with a_dig"}
            )
        if digitization.get("lambda") is None and digitization.get("r_over_a") is None:
            digitization["lambda"] = DEFAULT_LAMBDA

    def _validate_trotter(self, trotter):
        beta = trotter.get("beta")
        temperature = trotter.get("temperature")
        if (beta is None) == (temperature is None):
            raise serializers.ValidationError(
                {"trotter.beta": "give exactly one of trotter.beta or trotter.temperature"}
            )
        if beta is None:
            trotter["beta"] = 1.0 / trotter.pop("temperature")
        if self.mode == "exact-diag":
            return
        if (trotter.get("delta") is None) == (trotter.get("hop_ratio") is None):
            raise serializers.ValidationError(
                {"trotter.delta": "give exactly one of trotter.delta or trotter.hop_ratio"}
            )

    def _validate_observables(self, data):
        observables = data["observables"]
        physics = data["physics"]
        if self.mode == "mc-lattice":
            geometry = LatticeGeometry(physics["dims"], physics["extent"])
            half = ",".join([str(geometry.extent // 2)] * geometry.dims)
            observables.setdefault("names", [])
            observables.setdefault("modes", [",".join(["0"] * geometry.dims), half])
            try:
                observables["modes"] = [
                    MomentumMode.parse(text, geometry).label for text in observables["modes"]
                ]
            except TruncationError as exc:
                raise serializers.ValidationError({"observables.modes": str(exc)})
        else:
            observables.setdefault("names", ["potential"])
            if observables.get("modes"):
                raise serializers.ValidationError(
                    {"observables.modes": "momentum modes need the lattice potential"}
                )
        if not observables["names"] and not observables.get("modes"):
            raise serializers.ValidationError({"observables.names": "nothing to measure"})
        try:
            resolve_observables(observables["names"], model_for(physics, physics["m_squared"][0]))
        except TruncationError as exc:
            raise serializers.ValidationError({"observables.names": str(exc)})
        if self.mode == "exact-diag":
            unsupported = [n for n in observables["names"] if n not in ("potential", "x", "x2")]
            if unsupported:
                raise serializers.ValidationError(
                    {"observables.names": f"not diagonal in the coordinate basis: {unsupported}"}
                )

    def _validate_points(self, data):
        """Build every sweep point once so no run starts with a bad one."""
        config = self.build_config(data)
        trotter = config.trotter
        for a_dig in config.digitization.get("a_dig") or [None]:
            try:
                grid = grid_for(config.digitization, a_dig)
            except TruncationError as exc:
                raise serializers.ValidationError({"digitization.a_dig": str(exc)})
            for m_squared in config.physics["m_squared"]:
                model = model_for(config.physics, m_squared)
                if self.mode == "exact-diag":
                    continue
                try:
                    delta = trotter.get("delta") or delta_for_hop_ratio(
                        trotter["beta"], grid.a_dig, trotter["hop_ratio"]
                    )
                    k = slices_for(trotter["beta"], delta)
                except TruncationError as exc:
                    raise serializers.ValidationError({"trotter.delta": str(exc)})
                if trotter.get("b_max", 1) > k:
                    raise serializers.ValidationError(
                        {"trotter.b_max": f"b_max={trotter['b_max']} exceeds K={k}"}
                    )
                try:
                    params_for(trotter, grid, model)
                except TruncationError as exc:
                    raise serializers.ValidationError({"trotter.delta": str(exc)})

    def build_config(self, data):
        return RunConfig(
            mode=self.mode,
            label=data["run"]["label"],
            physics=data["physics"],
            digitization=data["digitization"],
            trotter=data["trotter"],
            schedule=data["schedule"],
            observables=data["observables"],
            exact_diag=data["exact_diag"],
            analyze=data["analyze"],
            output=data["output"],
            values=flatten(data),
        )


def flatten(data):
    """Validated sections back to ``section.key`` form, unset keys left out."""
    values = {
        f"{section}.{name}": value
        for section, fields in data.items()
        for name, value in fields.items()
        if value is not None
    }
    # mode labels contain commas themselves
    if values.get("observables.modes"):
        values["observables.modes"] = f"{ModeListField.separator} ".join(values["observables.modes"])
    return values


def flatten_errors(detail, prefix=""):
    """Nested DRF error detail to ``section.key: message`` lines."""
    if isinstance(detail, dict):
        return [
            line
            for key, value in detail.items()
            for line in flatten_errors(
                value,
                prefix if key == "non_field_errors" else ".".join(filter(None, [prefix, str(key)])),
            )
        ]
    if isinstance(detail, list):
        return [line for item in detail for line in flatten_errors(item, prefix)]
    return [f"{prefix or 'config'}: {detail}"]


def parse_config(mode, values, overrides=None):
    """
    Validate a parsed config (plus overrides, which win) into a RunConfig.

    Raises rest_framework's ValidationError keyed by the offending key.
    """
    serializer = RunConfigSerializer(data={**values, **(overrides or {})}, context={"mode": mode})
    serializer.is_valid(raise_exception=True)
    return serializer.build_config(serializer.validated_data)


class StreamRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = StreamRecord
        fields = [
            "id",
            "point",
            "a_dig",
            "m_squared",
            "stream_id",
            "seed",
            "acceptance",
            "csv_path",
        ]


class AggregateRecordSerializer(serializers.ModelSerializer):
    """
    One row of an analysis table.
    Used in: GET /api/aggregates/ and GET /api/runs/<id>/aggregates/
    """

    run_label = serializers.CharField(source="run.label", read_only=True)

    class Meta:
        model = AggregateRecord
        fields = [
            "id",
            "run",
            "run_label",
            "observable",
            "a_dig",
            "m_squared",
            "delta",
            "k",
            "mean",
            "err",
            "d",
            "n_stream",
            "n_step",
            "exact",
            "rel_err",
        ]


class RunListSerializer(serializers.ModelSerializer):
    """
    Minimal info for run lists.
    Used in: GET /api/runs/
    """

    stream_count = serializers.SerializerMethodField()

    def get_stream_count(self, obj) -> int:
        return obj.streams.count()

    class Meta:
        model = RunRecord
        fields = [
            "id",
            "mode",
            "label",
            "status",
            "base_seed",
            "stream_count",
            "created_at",
            "finished_at",
        ]


class RunDetailSerializer(serializers.ModelSerializer):
    """
    Full run info with its streams.
    Used in: GET /api/runs/<id>/
    """

    streams = StreamRecordSerializer(many=True, read_only=True)

    class Meta:
        model = RunRecord
        fields = [
            "id",
            "mode",
            "label",
            "status",
            "message",
            "config_text",
            "base_seed",
            "output_dir",
            "streams",
            "created_at",
            "started_at",
            "finished_at",
            "duration",
        ]
