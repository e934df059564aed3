# Generated by Django 5.2.9 on 2026-10-17 09:12

import django.utils.timezone
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CheckRun',
            fields=[
                ('run_id', models.UUIDField(default=uuid.uuid4, editable=False, help_text='Unique identifier for this run', primary_key=True, serialize=False)),
                ('gamma', models.FloatField(help_text='Slant angle of the target half-plane')),
                ('omega_spec', models.CharField(help_text='Dilatation expression as given', max_length=255)),
                ('route', models.CharField(choices=[('theorem1', 'Monomial criterion'), ('theorem2', 'Moebius criterion'), ('general', 'General dilatation')], db_index=True, default='general', help_text='Which criterion was applied', max_length=20)),
                ('passed', models.BooleanField(db_index=True, default=False)),
                ('exit_code', models.IntegerField(default=0)),
                ('sup_omega_tilde_interior', models.FloatField(blank=True, null=True)),
                ('min_jacobian', models.FloatField(blank=True, null=True)),
                ('monotone_arc_count', models.IntegerField(blank=True, null=True)),
                ('status', models.CharField(choices=[('success', 'Success'), ('error', 'Error')], db_index=True, default='success', max_length=20)),
                ('error_type', models.CharField(db_index=True, default='none', max_length=50)),
                ('error_message', models.TextField(blank=True, null=True)),
                ('report', models.JSONField(blank=True, default=dict, help_text='Criterion and verification reports')),
                ('created_at', models.DateTimeField(db_index=True, default=django.utils.timezone.now)),
            ],
            options={
                'verbose_name': 'Check Run',
                'verbose_name_plural': 'Check Runs',
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['created_at', 'status'], name='harmconv_ch_created_5b1f0e_idx')],
            },
        ),
    ]
