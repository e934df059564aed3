"""
harmconv - Django Admin Configuration
"""

from django.contrib import admin
from .models import CheckRun


@admin.register(CheckRun)
class CheckRunAdmin(admin.ModelAdmin):
    """Admin configuration for check runs."""

    list_display = [
        'run_id',
        'omega_spec',
        'gamma',
        'route',
        'passed',
        'exit_code',
        'status',
        'created_at',
    ]

    list_filter = [
        'route',
        'passed',
        'status',
        'error_type',
        'created_at',
    ]

    search_fields = [
        'run_id',
        'omega_spec',
        'error_message',
    ]

    readonly_fields = [
        'run_id',
        'created_at',
    ]

    ordering = ['-created_at']

    date_hierarchy = 'created_at'

    fieldsets = (
        ('Input', {
            'fields': ('run_id', 'omega_spec', 'gamma', 'route', 'created_at')
        }),
        ('Verdict', {
            'fields': ('passed', 'exit_code', 'sup_omega_tilde_interior', 'min_jacobian', 'monotone_arc_count')
        }),
        ('Errors', {
            'fields': ('status', 'error_type', 'error_message'),
        }),
        ('Report', {
            'fields': ('report',),
            'classes': ('collapse',),
        }),
    )
