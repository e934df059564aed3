"""
Tests for the SVG figures.
"""

import re
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from harmconv.exceptions import HarmconvError
from harmconv.mappings import convolve, convolve_f0, make_f0, reliable_radius
from harmconv.plotting import PlotConfig, render_figure, ring_points, ray_points, split_visible, write_figure

POLYLINE_RE = re.compile(r'<polyline points="([^"]*)"')


def polylines(svg):
    return POLYLINE_RE.findall(svg)


def x_coordinates(svg):
    return [float(pair.split(',')[0]) for points in polylines(svg) for pair in points.split()]


class PlotConfigTests(SimpleTestCase):

    def test_defaults(self):
        config = PlotConfig()
        self.assertEqual((config.rings, config.rays, config.width_px), (10, 16, 800))

    def test_validation(self):
        for kwargs in ({'rings': 0}, {'rays': 0}, {'r_max': 1.0}, {'samples_per_curve': 10}, {'clip_radius': 0}):
            with self.assertRaises(HarmconvError, msg=kwargs):
                PlotConfig(**kwargs)


class CurveTests(SimpleTestCase):

    def test_ring_and_ray_shapes(self):
        config = PlotConfig(rings=3, rays=5, r_max=0.9, samples_per_curve=64)
        rings = ring_points(config)
        rays = ray_points(config)
        self.assertEqual(rings.shape, (3, 64))
        self.assertEqual(rays.shape, (5, 64))
        self.assertAlmostEqual(float(np.abs(rings[-1, 0])), 0.9)
        self.assertEqual(rays[0, 0], 0)

    def test_split_visible_open(self):
        w = np.array([0, 1, 20, 2, 3, np.inf, 1], dtype=complex)
        runs = split_visible(w, 8.0, closed=False)
        self.assertEqual([len(run) for run in runs], [2, 2, 1])

    def test_split_visible_closed_seam(self):
        w = np.array([1, 2, 20, 3, 4], dtype=complex)
        runs = split_visible(w, 8.0, closed=True)
        self.assertEqual(len(runs), 1)
        self.assertEqual(list(runs[0]), [3, 4, 1, 2])

    def test_split_visible_closes_full_curve(self):
        w = np.array([1, 2, 3], dtype=complex)
        run, = split_visible(w, 8.0, closed=True)
        self.assertEqual(list(run), [1, 2, 3, 1])


class RenderTests(SimpleTestCase):

    def test_single_ring_and_ray(self):
        svg = render_figure(make_f0(), PlotConfig(rings=1, rays=1, r_max=0.5, samples_per_curve=64))
        self.assertEqual(len(polylines(svg)), 2)
        self.assertNotIn('data-clipped', svg)
        self.assertIn('<title>f0</title>', svg)

    def test_deterministic(self):
        config = PlotConfig(rings=4, rays=6, samples_per_curve=128)
        F = convolve_f0(make_f0())
        self.assertEqual(render_figure(F, config, 'F'), render_figure(F, config, 'F'))

    def test_f0_image_stays_in_halfplane(self):
        svg = render_figure(make_f0(), PlotConfig(rings=5, rays=8, samples_per_curve=256))
        self.assertGreaterEqual(min(x_coordinates(svg)), -0.5 - 1e-3)

    def test_clipped_curves_are_marked(self):
        svg = render_figure(make_f0(), PlotConfig(rings=2, rays=4, samples_per_curve=256, clip_radius=2.0))
        self.assertIn('data-clipped="true"', svg)
        self.assertIn('<circle', svg)
        self.assertLessEqual(max(abs(x) for x in x_coordinates(svg)), 2.0)

    def test_series_map_drawn_within_reliable_radius(self):
        general = convolve(make_f0(256), make_f0(256))
        radius = reliable_radius(general)
        config = PlotConfig(rings=3, rays=4, samples_per_curve=128, clip_radius=50.0)
        with self.assertLogs('harmconv', level='WARNING') as logs:
            svg = render_figure(general, config)
        self.assertTrue(any('lowered' in line for line in logs.output))
        self.assertFalse(any('truncation error' in line for line in logs.output))
        clamped = PlotConfig(rings=3, rays=4, r_max=radius, samples_per_curve=128, clip_radius=50.0)
        self.assertEqual(svg, render_figure(general, clamped))

    def test_write_figure(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_figure(Path(tmp) / 'nested' / 'f.svg', '<svg/>')
            self.assertEqual(path.read_text(encoding='utf-8'), '<svg/>')
