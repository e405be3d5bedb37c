from django.contrib import admin

from .models import AggregateRecord, RunRecord, StreamRecord


class StreamInline(admin.TabularInline):
    model = StreamRecord
    extra = 0
    readonly_fields = ["point", "a_dig", "m_squared", "stream_id", "seed", "acceptance", "csv_path"]


@admin.register(RunRecord)
class RunRecordAdmin(admin.ModelAdmin):
    list_display = ["id", "mode", "label", "status", "created_at", "finished_at"]
    list_filter = ["mode", "status"]
    search_fields = ["label"]
    inlines = [StreamInline]


@admin.register(AggregateRecord)
class AggregateRecordAdmin(admin.ModelAdmin):
    list_display = ["run", "observable", "a_dig", "m_squared", "mean", "err", "rel_err"]
    list_filter = ["observable"]
