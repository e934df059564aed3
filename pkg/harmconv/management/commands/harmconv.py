"""
Management command driving the harmconv toolkit.

Usage:
    python manage.py harmconv shear --gamma 1.5707963 --omega "z" --out f.json
    python manage.py harmconv convolve f.json --out conv.json
    python manage.py harmconv dilatation --gamma 0 --omega "(z+0.5)/(1+0.5*z)"
    python manage.py harmconv check --gamma 0 --omega "-z^3"
    python manage.py harmconv plot f.json --out f.svg --convolve
    python manage.py harmconv scan --gamma 0 --grid 50 --out scan.csv
    python manage.py harmconv example 2 --out-dir figures --json

Exit codes: 0 success, 2 failed verification, 3 degenerate input or I/O error.
"""

import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from harmconv.exceptions import HarmconvError
from harmconv.serializers import RationalMapSerializer
from harmconv.services import harmconv_service


class Command(BaseCommand):
    help = 'Shear construction, convolution with f0, dilatation criteria and figures'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)

        shear = subparsers.add_parser('shear', help='Build the sheared map for (gamma, omega)')
        shear.add_argument('--gamma', type=float, required=True, help='Slant angle in radians')
        shear.add_argument('--omega', required=True, help='Dilatation, e.g. "-z^2" or "(z+0.5)/(1+0.5*z)"')
        shear.add_argument('--order', type=int, default=None, help='Series truncation order (default: 64)')
        shear.add_argument('--out', required=True, help='Map JSON path')

        convolve = subparsers.add_parser('convolve', help='Convolve a map with f0, or two maps')
        convolve.add_argument('map', help='Map JSON path')
        convolve.add_argument('other', nargs='?', default=None, help='Second map JSON path')
        convolve.add_argument('--out', required=True, help='Output map JSON path')

        dilatation = subparsers.add_parser('dilatation', help='Closed-form dilatation of f0 * f')
        dilatation.add_argument('--gamma', type=float, required=True)
        dilatation.add_argument('--omega', required=True)
        dilatation.add_argument('--out', default=None, help='Write the rational map JSON here')

        check = subparsers.add_parser('check', help='Decide the criterion and verify f0 * f')
        check.add_argument('--gamma', type=float, required=True)
        check.add_argument('--omega', required=True)
        check.add_argument('--out', default=None, help='Write the report JSON here')

        plot = subparsers.add_parser('plot', help='SVG image of rings and rays under a map')
        plot.add_argument('map', help='Map JSON path')
        plot.add_argument('--out', required=True, help='SVG path for f')
        plot.add_argument('--convolve', action='store_true', help='Also plot f0 * f next to the output')
        plot.add_argument('--rings', type=int, default=None)
        plot.add_argument('--rays', type=int, default=None)
        plot.add_argument('--r-max', type=float, default=None)
        plot.add_argument('--samples', type=int, default=None)
        plot.add_argument('--clip', type=float, default=None, help='Clip radius W')
        plot.add_argument('--width', type=int, default=None, help='Width in pixels')

        scan = subparsers.add_parser('scan', help='Sweep the Moebius parameter over the disk')
        scan.add_argument('--gamma', type=float, required=True)
        scan.add_argument('--grid', type=int, default=None, help='Points per axis (default: 200)')
        scan.add_argument('--r-eval', type=float, default=None, help='Radius for sup |omega~| (default: 0.995)')
        scan.add_argument('--out', required=True, help='CSV path')

        example = subparsers.add_parser('example', help='Regenerate a worked example figure pair')
        example.add_argument('case', type=int, choices=[1, 2, 3])
        example.add_argument('--out-dir', default='.', help='Directory for the SVG pair')
        example.add_argument('--json', action='store_true', help='Also write both maps as JSON')

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['subcommand']}")
        try:
            return handler(options)
        except HarmconvError as e:
            raise CommandError(f'[{e.error_type}] {e.message}', returncode=3)

    def _print_json(self, data):
        self.stdout.write(json.dumps(data, indent=2, sort_keys=True))

    # ============================================
    # Subcommands
    # ============================================

    def handle_shear(self, options):
        f, payload = harmconv_service.shear(options['gamma'], options['omega'], options['order'])
        harmconv_service.save_json(options['out'], payload['map'])
        self.stdout.write(f"shear_residual {payload['shear_residual']:.3e}")
        self.stdout.write(self.style.SUCCESS(f"Map of order {f.order} written to {options['out']}"))

    def handle_convolve(self, options):
        f = harmconv_service.load_map(options['map'])
        other = harmconv_service.load_map(options['other']) if options['other'] else None
        result = harmconv_service.convolve(f, other)
        harmconv_service.save_json(options['out'], harmconv_service.map_to_dict(result))
        self.stdout.write(self.style.SUCCESS(f"Convolution written to {options['out']}"))

    def handle_dilatation(self, options):
        omega_tilde = harmconv_service.dilatation(options['gamma'], options['omega'])
        data = dict(RationalMapSerializer(omega_tilde).data)
        if options['out']:
            harmconv_service.save_json(options['out'], data)
        self._print_json(data)

    def handle_check(self, options):
        payload, exit_code = harmconv_service.check(options['gamma'], options['omega'])
        if options['out']:
            harmconv_service.save_json(options['out'], payload)
        self._print_json(payload)
        if exit_code != 0:
            raise CommandError('Verification failed', returncode=exit_code)
        self.stdout.write(self.style.SUCCESS('Verification passed'))

    def handle_plot(self, options):
        f = harmconv_service.load_map(options['map'])
        config = harmconv_service.plot_config(
            rings=options['rings'],
            rays=options['rays'],
            r_max=options['r_max'],
            samples_per_curve=options['samples'],
            clip_radius=options['clip'],
            width_px=options['width'],
        )
        out = Path(options['out'])
        harmconv_service.plot(f, config, out, title=f.label or 'f')
        self.stdout.write(self.style.SUCCESS(f'Figure written to {out}'))
        if options['convolve']:
            conv_out = out.with_name(f'{out.stem}_conv{out.suffix}')
            harmconv_service.plot(harmconv_service.convolve(f), config, conv_out, title='f0 * f')
            self.stdout.write(self.style.SUCCESS(f'Figure written to {conv_out}'))

    def handle_scan(self, options):
        rows = harmconv_service.scan(options['gamma'], options['out'], options['grid'], options['r_eval'])
        self.stdout.write(self.style.SUCCESS(f"{rows} rows written to {options['out']}"))

    def handle_example(self, options):
        case, f, conv = harmconv_service.example(options['case'])
        out_dir = Path(options['out_dir'])
        config = harmconv_service.plot_config()

        written = [
            harmconv_service.plot(f, config, out_dir / f'example{case.id}_f.svg', title=f'Example {case.id}: f'),
            harmconv_service.plot(conv, config, out_dir / f'example{case.id}_f0_conv_f.svg', title=f'Example {case.id}: f0 * f'),
        ]
        if options['json']:
            written.append(harmconv_service.save_json(out_dir / f'example{case.id}_f.json', harmconv_service.example_payload(case, f)))
            written.append(harmconv_service.save_json(out_dir / f'example{case.id}_f0_conv_f.json', harmconv_service.example_payload(case, conv)))

        for path in written:
            self.stdout.write(self.style.SUCCESS(f'  Written: {path}'))
