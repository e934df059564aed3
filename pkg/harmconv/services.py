"""
harmconv - Service layer

Orchestrates parsing, the shear construction, criteria and verification
for both the `harmconv` management command and the HTTP API. Every
`check` is persisted as a CheckRun.
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np
from django.conf import settings
from rest_framework import serializers as drf_serializers

from .criteria import (
    MoebiusParams,
    blaschke_counterexample,
    cond_10a,
    cond_11,
    theorem1_check,
    theorem2_check,
    v_value,
)
from .dilatation import tilde_omega_general, tilde_omega_moebius
from .exceptions import HarmconvError, MapFileError, WitnessNotFound
from .gallery import GalleryCase, example_case
from .mappings import HarmonicMap, convolve, convolve_f0, shear_residual, shear_slanted
from .models import CheckRun
from .omega_spec import as_moebius, as_monomial, parse_omega
from .plotting import PlotConfig, render_figure, write_figure
from .polyrat import RationalMap, poly_roots
from .serializers import (
    BlaschkeWitnessSerializer,
    CriterionReportSerializer,
    HarmonicMapSerializer,
    RationalMapSerializer,
    Theorem1ResultSerializer,
    VerificationReportSerializer,
)
from .verify import full_report

logger = logging.getLogger('harmconv')

SCAN_HEADER = ['re_a', 'im_a', 'gamma', 'v', 'cond_10a', 'cond_11', 'applicable', 'sup_omega_tilde']


class HarmconvService:
    """
    Entry points shared by the CLI and the API.

    Numerical defaults come from settings.HARMCONV.
    """

    def __init__(self):
        """Initialize the service with defaults from settings."""
        self.config = settings.HARMCONV
        self.default_order = self.config['DEFAULT_ORDER']

    # ============================================
    # Map files
    # ============================================

    def map_to_dict(self, f: HarmonicMap) -> Dict[str, Any]:
        return dict(HarmonicMapSerializer(f).data)

    def load_map(self, path) -> HarmonicMap:
        """
        Read a map JSON file.

        Raises:
            MapFileError: if the file is missing, not JSON, or not a valid map
        """
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding='utf-8'))
        except OSError as e:
            raise MapFileError(f'Cannot read {path}: {e}')
        except json.JSONDecodeError as e:
            raise MapFileError(f'{path} is not valid JSON: {e}')

        serializer = HarmonicMapSerializer(data=data)
        if not serializer.is_valid():
            raise MapFileError(f'{path} is not a valid map file: {serializer.errors}')
        try:
            return serializer.save()
        except drf_serializers.ValidationError as e:
            raise MapFileError(f'{path} is not a valid map file: {e.detail}')

    def save_json(self, path, data: Dict[str, Any]) -> Path:
        """
        Raises:
            MapFileError: if the file cannot be written
        """
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(data, indent=2, sort_keys=True) + '\n', encoding='utf-8')
        except OSError as e:
            raise MapFileError(f'Cannot write {path}: {e}')
        logger.info(f'JSON written to {path}')
        return path

    # ============================================
    # Construction
    # ============================================

    def shear(self, gamma: float, omega_spec: str, order: Optional[int] = None) -> Tuple[HarmonicMap, Dict[str, Any]]:
        """
        Build the sheared map for (gamma, omega).

        Returns:
            The map and a payload with its JSON form and shear residual
        """
        omega = parse_omega(omega_spec)
        f = shear_slanted(gamma, omega, order or self.default_order)
        payload = {
            'map': self.map_to_dict(f),
            'shear_residual': shear_residual(f),
            'b1': [f.b1.real, f.b1.imag],
        }
        return f, payload

    def convolve(self, f: HarmonicMap, other: Optional[HarmonicMap] = None) -> HarmonicMap:
        """f0 * f when ``other`` is None, else f * other."""
        if other is None:
            return convolve_f0(f)
        return convolve(f, other)

    def dilatation(self, gamma: float, omega_spec: str) -> RationalMap:
        omega = parse_omega(omega_spec)
        return tilde_omega_general(gamma, omega)

    # ============================================
    # Criteria and verification
    # ============================================

    def _verification_kwargs(self) -> Dict[str, Any]:
        return {
            'r_max': self.config['R_MAX'],
            'grid_r': self.config['GRID_R'],
            'grid_t': self.config['GRID_T'],
            'boundary_samples': self.config['BOUNDARY_SAMPLES'],
            'convexity_radius': self.config['CONVEXITY_RADIUS'],
            'convexity_samples': self.config['CONVEXITY_SAMPLES'],
            'halfplane_grid': self.config['HALFPLANE_GRID'],
        }

    def _criterion(self, gamma: float, omega: RationalMap) -> Tuple[str, Dict[str, Any]]:
        """Pick the criterion that matches the shape of omega."""
        mono = as_monomial(omega)
        if mono is not None and abs(mono.modulus - 1) <= 1e-12:
            result = theorem1_check(gamma, mono.theta, mono.n)
            criterion = dict(Theorem1ResultSerializer(result).data)
            criterion['n'] = mono.n
            criterion['theta'] = mono.theta
            if mono.n >= 3:
                try:
                    witness = blaschke_counterexample(
                        mono.n, gamma, theta=mono.theta, grid=self.config['WITNESS_GRID']
                    )
                except WitnessNotFound as e:
                    logger.warning(e.message)
                    criterion['counterexample'] = None
                else:
                    criterion['counterexample'] = dict(BlaschkeWitnessSerializer(witness).data)
            return 'theorem1', criterion

        a = as_moebius(omega)
        if a is not None:
            report = theorem2_check(MoebiusParams(a=a, gamma=gamma))
            return 'theorem2', dict(CriterionReportSerializer(report).data)

        return 'general', {}

    def check(self, gamma: float, omega_spec: str, save: bool = True) -> Tuple[Dict[str, Any], int]:
        """
        Decide the matching criterion and verify f0 * f numerically.

        Returns:
            (payload, exit_code) with exit code 0 when verification passed
            and 2 when it failed

        Raises:
            HarmconvError: for degenerate input (recorded before re-raising)
        """
        run_data = {
            'gamma': gamma,
            'omega_spec': omega_spec,
            'route': 'general',
        }
        try:
            omega = parse_omega(omega_spec)
            route, criterion = self._criterion(gamma, omega)
            run_data['route'] = route

            f = shear_slanted(gamma, omega, self.default_order)
            omega_tilde = tilde_omega_general(gamma, omega)
            report = full_report(f, omega_tilde, **self._verification_kwargs())
        except HarmconvError as e:
            logger.error(f'Check failed for omega={omega_spec!r} gamma={gamma}: [{e.error_type}] {e.message}')
            if save:
                self._save_run({
                    **run_data,
                    'status': 'error',
                    'exit_code': 3,
                    'error_type': e.error_type,
                    'error_message': e.message,
                })
            raise

        exit_code = 0 if report.passed else 2
        payload = {
            'gamma': f.gamma,
            'omega': omega_spec,
            'route': route,
            'criterion': criterion,
            'omega_tilde': dict(RationalMapSerializer(omega_tilde).data),
            'verification': dict(VerificationReportSerializer(report).data),
            'b1': [f.b1.real, f.b1.imag],
            'passed': report.passed,
            'exit_code': exit_code,
        }
        if save:
            run = self._save_run({
                **run_data,
                'passed': report.passed,
                'exit_code': exit_code,
                'sup_omega_tilde_interior': _finite_or_none(report.sup_omega_tilde_interior),
                'min_jacobian': _finite_or_none(report.min_jacobian),
                'monotone_arc_count': report.monotone_arc_count,
                'report': payload,
            })
            if run is not None:
                payload['run_id'] = str(run.run_id)
        return payload, exit_code

    def moebius_criteria(self, a: complex, gamma: float) -> Dict[str, Any]:
        return dict(CriterionReportSerializer(theorem2_check(MoebiusParams(a=a, gamma=gamma))).data)

    def _save_run(self, run_data: Dict[str, Any]) -> Optional[CheckRun]:
        """
        Save the run record to database.

        Returns:
            Created CheckRun instance, or None if saving failed
        """
        try:
            return CheckRun.objects.create(**run_data)
        except Exception as e:
            logger.error(f'Failed to save check run: {e}')
            # Don't raise - persistence should not break the main flow
            return None

    # ============================================
    # Worked examples, figures, scans
    # ============================================

    def example(self, case_id: int, order: Optional[int] = None) -> Tuple[GalleryCase, HarmonicMap, HarmonicMap]:
        case = example_case(case_id)
        f = shear_slanted(case.gamma, case.omega, order or self.default_order)
        return case, f, convolve_f0(f)

    def example_payload(self, case: GalleryCase, f: HarmonicMap) -> Dict[str, Any]:
        data = self.map_to_dict(f)
        data['closed_form_id'] = case.id
        return data

    def plot_config(self, **overrides) -> PlotConfig:
        plot = self.config['PLOT']
        values = {
            'rings': plot['RINGS'],
            'rays': plot['RAYS'],
            'r_max': plot['R_MAX'],
            'samples_per_curve': plot['SAMPLES_PER_CURVE'],
            'clip_radius': plot['CLIP_RADIUS'],
            'width_px': plot['WIDTH_PX'],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return PlotConfig(**values)

    def plot(self, f: HarmonicMap, config: PlotConfig, out_path, title: str = '') -> Path:
        return write_figure(out_path, render_figure(f, config, title))

    def scan(self, gamma: float, out_path, grid: Optional[int] = None, r_eval: Optional[float] = None) -> int:
        """
        Sweep the Moebius parameter over a cartesian grid of the disk and
        write one CSV row per point with |a| < 1.

        Rows are ordered by Im a, then Re a, both ascending.

        Returns:
            Number of rows written

        Raises:
            MapFileError: if the CSV cannot be written
        """
        grid = grid or self.config['SCAN_GRID']
        r_eval = r_eval or self.config['SCAN_R_EVAL']
        if grid < 10:
            raise HarmconvError('Scan grid needs at least 10 points per axis', 'invalid_parameter')

        axis = np.linspace(-1.0, 1.0, grid)
        circle = r_eval * np.exp(2j * np.pi * np.arange(512) / 512)
        path = Path(out_path)
        rows = 0
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open('w', newline='', encoding='utf-8') as handle:
                writer = csv.writer(handle, lineterminator='\n')
                writer.writerow(SCAN_HEADER)
                for im_a in axis:
                    for re_a in axis:
                        a = complex(re_a, im_a)
                        if abs(a) >= 1:
                            continue
                        writer.writerow(self._scan_row(a, gamma, r_eval, circle))
                        rows += 1
                    logger.debug(f'Scan row Im a = {im_a:.4f} done ({rows} points so far)')
        except OSError as e:
            raise MapFileError(f'Cannot write {path}: {e}')

        logger.info(f'Scan gamma={gamma:.6f} grid={grid}: {rows} rows written to {path}')
        return rows

    def _scan_row(self, a: complex, gamma: float, r_eval: float, circle: np.ndarray):
        p = MoebiusParams(a=a, gamma=gamma)
        first, second = cond_10a(p), cond_11(p)
        omega_tilde = tilde_omega_moebius(gamma, a).map
        poles = poly_roots(omega_tilde.den).moduli() if omega_tilde.den.degree >= 1 else np.array([])
        if np.any(poles <= r_eval):
            sup = math.inf
        else:
            # maximum principle: the circle bounds the closed disk |z| <= r_eval
            sup = float(np.max(np.abs(omega_tilde.values(circle))))
        return [
            f'{a.real:.6f}',
            f'{a.imag:.6f}',
            f'{gamma:.6f}',
            f'{v_value(p):.6f}',
            str(first).lower(),
            str(second).lower(),
            str(first and not second).lower(),
            f'{sup:.6f}',
        ]


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


# Create a singleton instance for easy access
harmconv_service = HarmconvService()
