"""
harmconv - URL Configuration for the harmconv app
"""

from django.urls import path

from . import views

urlpatterns = [
    # Construction endpoints
    path('shear/', views.ShearView.as_view(), name='shear'),
    path('dilatation/', views.DilatationView.as_view(), name='dilatation'),

    # Criteria endpoints
    path('check/', views.CheckView.as_view(), name='check'),
    path('criteria/moebius/', views.MoebiusCriteriaView.as_view(), name='criteria-moebius'),
    path('examples/<int:case_id>/', views.ExampleView.as_view(), name='example'),

    # Run history endpoints
    path('runs/', views.RunsListView.as_view(), name='runs-list'),
    path('runs/<uuid:run_id>/', views.RunDetailView.as_view(), name='runs-detail'),
]
