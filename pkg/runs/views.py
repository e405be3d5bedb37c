# runs/views.py
from django_filters.rest_framework import DjangoFilterBackend
from rest_framework import filters, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from .models import AggregateRecord, RunRecord
from .serializers import (
    AggregateRecordSerializer,
    RunDetailSerializer,
    RunListSerializer,
    StreamRecordSerializer,
)


class RunViewSet(viewsets.ReadOnlyModelViewSet):
    """
    Browse the run registry.
    - list() -> GET /api/runs/
    - retrieve() -> GET /api/runs/{id}/

    Runs are started by the management commands only.
    """

    queryset = RunRecord.objects.all()

    filter_backends = [
        DjangoFilterBackend,
        filters.SearchFilter,
        filters.OrderingFilter,
    ]
    filterset_fields = ["mode", "status"]  # ?mode=mc-lattice&status=completed
    search_fields = ["label"]
    ordering_fields = ["created_at", "finished_at"]
    ordering = ["-created_at"]

    def get_serializer_class(self):
        if self.action == "list":
            return RunListSerializer
        return RunDetailSerializer

    @action(detail=True, methods=["get"])
    def aggregates(self, request, pk=None):
        """
        Analysis rows of one run.
        URL: GET /api/runs/{id}/aggregates/
        """
        rows = self.get_object().aggregates.select_related("run")

        page = self.paginate_queryset(rows)
        if page is not None:
            serializer = AggregateRecordSerializer(page, many=True)
            return self.get_paginated_response(serializer.data)

        serializer = AggregateRecordSerializer(rows, many=True)
        return Response(serializer.data)

    @action(detail=True, methods=["get"])
    def streams(self, request, pk=None):
        """URL: GET /api/runs/{id}/streams/"""
        streams = self.get_object().streams.all()
        page = self.paginate_queryset(streams)
        if page is not None:
            serializer = StreamRecordSerializer(page, many=True)
            return self.get_paginated_response(serializer.data)
        return Response(StreamRecordSerializer(streams, many=True).data)


class AggregateViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = AggregateRecord.objects.select_related("run")
    serializer_class = AggregateRecordSerializer

    filter_backends = [DjangoFilterBackend, filters.OrderingFilter]
    filterset_fields = ["observable", "run", "run__mode"]  # ?observable=potential
    ordering_fields = ["a_dig", "m_squared", "rel_err"]
    ordering = ["observable", "m_squared", "a_dig"]
