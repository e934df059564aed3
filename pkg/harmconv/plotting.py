"""
harmconv - SVG figures

Images of concentric circles and radial segments under a harmonic map,
rendered through the Django template engine. Output depends only on the
map and the PlotConfig: coordinates use six decimals and no timestamps
are written.
"""

import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List

import numpy as np
from django.template.loader import render_to_string

from .exceptions import HarmconvError, MapFileError
from .mappings import HarmonicMap, clamp_to_series, image_values

logger = logging.getLogger('harmconv')

TEMPLATE_NAME = 'harmconv/figure.svg'


@dataclass(frozen=True)
class PlotConfig:
    rings: int = 10
    rays: int = 16
    r_max: float = 0.99
    samples_per_curve: int = 1000
    clip_radius: float = 8.0
    width_px: int = 800

    def __post_init__(self):
        if self.rings < 1 or self.rays < 1:
            raise HarmconvError('A figure needs at least one ring and one ray', 'invalid_plot_config')
        if not 0 < self.r_max < 1:
            raise HarmconvError(f'r_max must lie in (0, 1), got {self.r_max}', 'invalid_plot_config')
        if self.samples_per_curve < 64:
            raise HarmconvError('Curves need at least 64 samples', 'invalid_plot_config')
        if self.clip_radius <= 0:
            raise HarmconvError('Clip radius must be positive', 'invalid_plot_config')


@dataclass(frozen=True)
class Polyline:
    points: str
    clipped: bool


@dataclass(frozen=True)
class ClipMarker:
    x: str
    y: str


def _fmt(value: float) -> str:
    return f'{value:.6f}'


def ring_points(config: PlotConfig) -> np.ndarray:
    """Shape (rings, samples): circles of radius k r_max/rings."""
    radii = config.r_max * np.arange(1, config.rings + 1) / config.rings
    t = 2 * np.pi * np.arange(config.samples_per_curve) / config.samples_per_curve
    return radii[:, None] * np.exp(1j * t[None, :])


def ray_points(config: PlotConfig) -> np.ndarray:
    """Shape (rays, samples): segments from 0 to r_max at angles 2 pi j/rays."""
    angles = 2 * np.pi * np.arange(config.rays) / config.rays
    r = np.linspace(0.0, config.r_max, config.samples_per_curve)
    return r[None, :] * np.exp(1j * angles[:, None])


def split_visible(w: np.ndarray, clip_radius: float, closed: bool) -> List[np.ndarray]:
    """
    Runs of consecutive points with |w| <= clip_radius.

    A closed curve is rotated to start at a clipped point so a run crossing
    the seam stays in one piece.
    """
    inside = np.isfinite(w) & (np.abs(w) <= clip_radius)
    if inside.all():
        return [np.append(w, w[0]) if closed else w]
    if closed:
        start = int(np.argmin(inside))
        w = np.roll(w, -start)
        inside = np.roll(inside, -start)

    runs = []
    current = []
    for value, keep in zip(w, inside):
        if keep:
            current.append(value)
        elif current:
            runs.append(np.array(current))
            current = []
    if current:
        runs.append(np.array(current))
    return runs


def _family(f: HarmonicMap, z: np.ndarray, config: PlotConfig, closed: bool):
    values = image_values(f, z)
    lines, markers = [], []
    for row in values:
        runs = split_visible(row, config.clip_radius, closed)
        clipped = not (np.isfinite(row).all() and np.all(np.abs(row) <= config.clip_radius))
        for run in runs:
            if run.size < 2:
                continue
            # y grows downward in SVG
            points = ' '.join(f'{_fmt(p.real)},{_fmt(-p.imag)}' for p in run)
            lines.append(Polyline(points=points, clipped=clipped))
            if clipped:
                for end in (run[0], run[-1]):
                    markers.append(ClipMarker(x=_fmt(end.real), y=_fmt(-end.imag)))
    return lines, markers


def render_figure(f: HarmonicMap, config: PlotConfig, title: str = '') -> str:
    """
    SVG 1.1 document with one group of rings and one group of rays.

    Maps evaluated from a truncated series are drawn only out to the radius
    their series is trusted at.
    """
    r_max = clamp_to_series(f, config.r_max)
    if r_max != config.r_max:
        config = replace(config, r_max=r_max)
    rings, ring_markers = _family(f, ring_points(config), config, closed=True)
    rays, ray_markers = _family(f, ray_points(config), config, closed=False)
    W = config.clip_radius
    context = {
        'title': title or f.label or 'f',
        'width': config.width_px,
        'view_box': f'{_fmt(-W)} {_fmt(-W)} {_fmt(2 * W)} {_fmt(2 * W)}',
        'marker_radius': _fmt(W / 200),
        'rings': rings,
        'rays': rays,
        'markers': ring_markers + ray_markers,
    }
    return render_to_string(TEMPLATE_NAME, context)


def write_figure(path, svg: str) -> Path:
    """
    Raises:
        MapFileError: if the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(svg, encoding='utf-8')
    except OSError as exc:
        raise MapFileError(f'Cannot write {path}: {exc}')
    logger.info(f'Figure written to {path}')
    return path
