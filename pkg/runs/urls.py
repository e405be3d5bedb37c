# runs/urls.py
from rest_framework.routers import DefaultRouter

from .views import AggregateViewSet, RunViewSet

# Router automatically generates URLs for ViewSets
router = DefaultRouter()
router.register(r"runs", RunViewSet, basename="run")
router.register(r"aggregates", AggregateViewSet, basename="aggregate")

urlpatterns = router.urls
