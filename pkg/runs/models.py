# runs/models.py
from django.db import models
from django.utils import timezone


class RunRecord(models.Model):
    MODE_CHOICES = [
        ("exact-diag", "Exact diagonalization"),
        ("mc-single", "Single-boson Monte Carlo"),
        ("mc-lattice", "Lattice Monte Carlo"),
        ("analyze", "Analysis"),
    ]
    STATUS_CHOICES = [
        ("pending", "Pending"),
        ("running", "Running"),
        ("completed", "Completed"),
        ("failed", "Failed"),
    ]

    mode = models.CharField(max_length=20, choices=MODE_CHOICES)
    label = models.CharField(max_length=200)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default="pending")
    message = models.TextField(blank=True)

    # config echo with every default resolved, as written to manifest.cfg
    config_text = models.TextField(blank=True)
    # u64 does not fit a signed bigint
    base_seed = models.CharField(max_length=20, default="0")
    output_dir = models.CharField(max_length=500)

    created_at = models.DateTimeField(auto_now_add=True)
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"Run #{self.id} - {self.mode} {self.label} ({self.status})"

    @property
    def duration(self):
        if self.started_at and self.finished_at:
            return (self.finished_at - self.started_at).total_seconds()
        return None

    def mark_running(self):
        self.status = "running"
        self.started_at = timezone.now()
        self.save(update_fields=["status", "started_at"])

    def mark_finished(self, status="completed", message=""):
        self.status = status
        self.message = message
        self.finished_at = timezone.now()
        self.save(update_fields=["status", "message", "finished_at"])


class StreamRecord(models.Model):
    run = models.ForeignKey(RunRecord, on_delete=models.CASCADE, related_name="streams")
    point = models.PositiveIntegerField()
    a_dig = models.FloatField()
    m_squared = models.FloatField()
    stream_id = models.PositiveIntegerField()
    seed = models.CharField(max_length=20)
    acceptance = models.JSONField(default=dict)
    csv_path = models.CharField(max_length=500)

    class Meta:
        ordering = ["point", "stream_id"]
        constraints = [
            models.UniqueConstraint(
                fields=["run", "point", "stream_id"], name="unique_stream_per_point"
            )
        ]

    def __str__(self):
        return f"{self.run_id}/{self.point}/{self.stream_id}"


class AggregateRecord(models.Model):
    run = models.ForeignKey(RunRecord, on_delete=models.CASCADE, related_name="aggregates")
    observable = models.CharField(max_length=100)
    a_dig = models.FloatField()
    m_squared = models.FloatField()
    delta = models.FloatField()
    k = models.PositiveIntegerField()
    mean = models.FloatField()
    err = models.FloatField()
    d = models.PositiveIntegerField()
    n_stream = models.PositiveIntegerField()
    n_step = models.PositiveIntegerField()
    exact = models.FloatField(null=True, blank=True)
    rel_err = models.FloatField(null=True, blank=True)

    class Meta:
        ordering = ["observable", "m_squared", "a_dig"]

    def __str__(self):
        return f"{self.observable} a={self.a_dig:g}: {self.mean:.6g} +- {self.err:.2g}"
