# Generated by Django 5.0.6 on 2026-10-18 09:00

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='RunRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('mode', models.CharField(choices=[('exact-diag', 'Exact diagonalization'), ('mc-single', 'Single-boson Monte Carlo'), ('mc-lattice', 'Lattice Monte Carlo'), ('analyze', 'Analysis')], max_length=20)),
                ('label', models.CharField(max_length=200)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('completed', 'Completed'), ('failed', 'Failed')], default='pending', max_length=20)),
                ('message', models.TextField(blank=True)),
                ('config_text', models.TextField(blank=True)),
                ('base_seed', models.CharField(default='0', max_length=20)),
                ('output_dir', models.CharField(max_length=500)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='AggregateRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('observable', models.CharField(max_length=100)),
                ('a_dig', models.FloatField()),
                ('m_squared', models.FloatField()),
                ('delta', models.FloatField()),
                ('k', models.PositiveIntegerField()),
                ('mean', models.FloatField()),
                ('err', models.FloatField()),
                ('d', models.PositiveIntegerField()),
                ('n_stream', models.PositiveIntegerField()),
                ('n_step', models.PositiveIntegerField()),
                ('exact', models.FloatField(blank=True, null=True)),
                ('rel_err', models.FloatField(blank=True, null=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='aggregates', to='runs.runrecord')),
            ],
            options={
                'ordering': ['observable', 'm_squared', 'a_dig'],
            },
        ),
        migrations.CreateModel(
            name='StreamRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('point', models.PositiveIntegerField()),
                ('a_dig', models.FloatField()),
                ('m_squared', models.FloatField()),
                ('stream_id', models.PositiveIntegerField()),
                ('seed', models.CharField(max_length=20)),
                ('acceptance', models.JSONField(default=dict)),
                ('csv_path', models.CharField(max_length=500)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='streams', to='runs.runrecord')),
            ],
            options={
                'ordering': ['point', 'stream_id'],
            },
        ),
        migrations.AddConstraint(
            model_name='streamrecord',
            constraint=models.UniqueConstraint(fields=('run', 'point', 'stream_id'), name='unique_stream_per_point'),
        ),
    ]
