"""
harmconv - Database Models

Every `check` invocation, from the CLI or the API, is recorded as a
CheckRun with its verdict and the full report.
"""

import uuid
from django.db import models
from django.utils import timezone


class CheckRun(models.Model):
    """
    One criterion + verification run for a (gamma, omega) pair.
    """

    STATUS_CHOICES = [
        ('success', 'Success'),
        ('error', 'Error'),
    ]

    ROUTE_CHOICES = [
        ('theorem1', 'Monomial criterion'),
        ('theorem2', 'Moebius criterion'),
        ('general', 'General dilatation'),
    ]

    run_id = models.UUIDField(
        primary_key=True,
        default=uuid.uuid4,
        editable=False,
        help_text="Unique identifier for this run"
    )

    # Input
    gamma = models.FloatField(help_text="Slant angle of the target half-plane")
    omega_spec = models.CharField(
        max_length=255,
        help_text="Dilatation expression as given"
    )
    route = models.CharField(
        max_length=20,
        choices=ROUTE_CHOICES,
        default='general',
        db_index=True,
        help_text="Which criterion was applied"
    )

    # Verdict
    passed = models.BooleanField(default=False, db_index=True)
    exit_code = models.IntegerField(default=0)

    # Headline numbers
    sup_omega_tilde_interior = models.FloatField(null=True, blank=True)
    min_jacobian = models.FloatField(null=True, blank=True)
    monotone_arc_count = models.IntegerField(null=True, blank=True)

    # Status and error handling
    status = models.CharField(
        max_length=20,
        choices=STATUS_CHOICES,
        default='success',
        db_index=True
    )
    error_type = models.CharField(max_length=50, default='none', db_index=True)
    error_message = models.TextField(null=True, blank=True)

    report = models.JSONField(
        default=dict,
        blank=True,
        help_text="Criterion and verification reports"
    )

    created_at = models.DateTimeField(default=timezone.now, db_index=True)

    class Meta:
        ordering = ['-created_at']
        verbose_name = 'Check Run'
        verbose_name_plural = 'Check Runs'
        indexes = [
            models.Index(fields=['created_at', 'status'], name='harmconv_ch_created_5b1f0e_idx'),
        ]

    def __str__(self):
        return f"{self.omega_spec} @ gamma={self.gamma:.4f} - {'passed' if self.passed else 'failed'}"
