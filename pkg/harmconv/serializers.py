"""
harmconv - DRF Serializers

JSON shapes shared by the HTTP API and the command line: complex numbers
as [re, im] pairs, coefficient sequences as lists of pairs, rational maps,
harmonic maps and the criterion / verification reports.
"""

import math

import numpy as np
from django.conf import settings
from rest_framework import serializers

from .exceptions import HarmconvError
from .mappings import HarmonicMap, ShearKernel
from .models import CheckRun
from .polyrat import Polynomial, RationalMap
from .series import PowerSeries


class FiniteFloatField(serializers.FloatField):
    """Float that serializes inf and nan as null."""

    def to_representation(self, value):
        value = float(value)
        return value if math.isfinite(value) else None


class ComplexField(serializers.Field):
    """A complex number as [re, im]; a bare real number is also accepted."""

    default_error_messages = {
        'invalid': 'Expected a number or a [re, im] pair.',
    }

    def to_representation(self, value):
        value = complex(value)
        return [float(value.real), float(value.imag)]

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, (int, float)):
            return complex(data)
        if isinstance(data, (list, tuple)) and len(data) == 2:
            try:
                value = complex(float(data[0]), float(data[1]))
            except (TypeError, ValueError):
                self.fail('invalid')
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                self.fail('invalid')
            return value
        self.fail('invalid')


class CoefficientsField(serializers.Field):
    """Coefficient sequence as a list of [re, im] pairs, index k for z^k."""

    default_error_messages = {
        'invalid': 'Expected a non-empty list of [re, im] pairs.',
    }

    def to_representation(self, value):
        if isinstance(value, Polynomial):
            coeffs = value.trimmed().coeffs
        else:
            coeffs = getattr(value, 'coeffs', value)
        return [[float(c.real), float(c.imag)] for c in np.asarray(coeffs, dtype=np.complex128)]

    def to_internal_value(self, data):
        if not isinstance(data, (list, tuple)) or not data:
            self.fail('invalid')
        complex_field = ComplexField()
        try:
            return np.array([complex_field.to_internal_value(item) for item in data], dtype=np.complex128)
        except serializers.ValidationError:
            self.fail('invalid')


def build_rational(data) -> RationalMap:
    try:
        return RationalMap(
            num=Polynomial(data['num']),
            den=Polynomial(data['den']),
            power=data.get('power', 0),
            unit=data.get('unit', 1 + 0j),
        )
    except HarmconvError as e:
        raise serializers.ValidationError({'error': e.message, 'error_type': e.error_type})


class RationalMapSerializer(serializers.Serializer):
    """unit * z^power * num(z)/den(z)."""

    num = CoefficientsField()
    den = CoefficientsField()
    power = serializers.IntegerField(min_value=0, default=0)
    unit = ComplexField(default=1 + 0j)

    def create(self, validated_data):
        return build_rational(validated_data)


class ShearKernelSerializer(serializers.Serializer):
    gamma = serializers.FloatField()
    omega = RationalMapSerializer()


class HarmonicMapSerializer(serializers.Serializer):
    """
    Map file format.

    ``omega`` is the dilatation of the map itself when known; ``kernel``
    holds the shear data the map was built from, so readers can evaluate
    it in closed form.
    """

    gamma = serializers.FloatField()
    order = serializers.IntegerField(read_only=True)
    h = CoefficientsField()
    g = CoefficientsField()
    omega = RationalMapSerializer(allow_null=True, required=False)
    kernel = ShearKernelSerializer(allow_null=True, required=False)
    convolved_with_f0 = serializers.BooleanField(default=False)
    label = serializers.CharField(allow_blank=True, required=False, default='')

    def create(self, validated_data):
        omega_data = validated_data.get('omega')
        kernel_data = validated_data.get('kernel')
        kernel = None
        if kernel_data:
            kernel = ShearKernel(gamma=kernel_data['gamma'], omega=build_rational(kernel_data['omega']))
        try:
            return HarmonicMap(
                h=PowerSeries(validated_data['h']),
                g=PowerSeries(validated_data['g']),
                gamma=validated_data['gamma'],
                omega=build_rational(omega_data) if omega_data else None,
                kernel=kernel,
                convolved_with_f0=bool(kernel) and validated_data.get('convolved_with_f0', False),
                label=validated_data.get('label', ''),
            )
        except HarmconvError as e:
            raise serializers.ValidationError({'error': e.message, 'error_type': e.error_type})


# ============================================
# Reports
# ============================================

class CorollaryFlagsSerializer(serializers.Serializer):
    c31 = serializers.BooleanField()
    c32 = serializers.BooleanField()
    c33 = serializers.BooleanField()


class CriterionReportSerializer(serializers.Serializer):
    """Moebius-case scalars and decision flags."""

    a = ComplexField()
    gamma = serializers.FloatField()
    theta = serializers.FloatField()
    v = serializers.FloatField()
    u = ComplexField()
    z0_closed = ComplexField(allow_null=True)
    z0_roots = ComplexField(allow_null=True)
    A = ComplexField()
    B = ComplexField()
    phi = serializers.FloatField()
    AB_modulus = serializers.FloatField()
    cond_10a = serializers.BooleanField()
    cond_11 = serializers.BooleanField()
    theorem2_applicable = serializers.BooleanField()
    corollary_flags = CorollaryFlagsSerializer()
    b1_warning = serializers.BooleanField()
    roots_in_closed_disk = serializers.BooleanField()
    root_strictly_inside = serializers.BooleanField()


class Theorem1ResultSerializer(serializers.Serializer):
    applicable = serializers.BooleanField()
    witness = ComplexField(allow_null=True)
    all_roots_in_disk = serializers.BooleanField()
    sup_boundary = FiniteFloatField()
    omega_tilde = RationalMapSerializer()


class BlaschkeWitnessSerializer(serializers.Serializer):
    root_moduli_product = serializers.FloatField()
    witness = ComplexField()
    witness_modulus_of_omega_tilde = FiniteFloatField()


class VerificationReportSerializer(serializers.Serializer):
    sup_omega_tilde_interior = FiniteFloatField()
    sup_omega_tilde_boundary = FiniteFloatField()
    poles_in_disk = serializers.IntegerField()
    min_jacobian = FiniteFloatField()
    halfplane_residual = FiniteFloatField(allow_null=True)
    direction = serializers.FloatField()
    monotone_arc_count = serializers.IntegerField()
    passed = serializers.BooleanField()
    params = serializers.DictField(child=serializers.FloatField())


# ============================================
# Requests
# ============================================

class DilatationRequestSerializer(serializers.Serializer):
    gamma = serializers.FloatField()
    omega = serializers.CharField(max_length=255)


class ShearRequestSerializer(DilatationRequestSerializer):
    order = serializers.IntegerField(min_value=1, max_value=4096, required=False)

    def validate(self, attrs):
        attrs.setdefault('order', settings.HARMCONV['DEFAULT_ORDER'])
        return attrs


class CheckRequestSerializer(DilatationRequestSerializer):
    pass


class MoebiusQuerySerializer(serializers.Serializer):
    re_a = serializers.FloatField()
    im_a = serializers.FloatField()
    gamma = serializers.FloatField()

    def validate(self, attrs):
        if attrs['re_a'] ** 2 + attrs['im_a'] ** 2 >= 1:
            raise serializers.ValidationError('The Moebius parameter must satisfy |a| < 1.')
        return attrs


# ============================================
# Persisted runs
# ============================================

class CheckRunSerializer(serializers.ModelSerializer):
    """Serializer for check runs."""

    class Meta:
        model = CheckRun
        fields = [
            'run_id',
            'gamma',
            'omega_spec',
            'route',
            'passed',
            'exit_code',
            'sup_omega_tilde_interior',
            'min_jacobian',
            'monotone_arc_count',
            'status',
            'error_type',
            'error_message',
            'report',
            'created_at',
        ]
        read_only_fields = ['run_id', 'created_at']


class CheckRunListSerializer(serializers.ModelSerializer):
    """Lightweight serializer for listing runs (excludes the report)."""

    class Meta:
        model = CheckRun
        fields = [
            'run_id',
            'gamma',
            'omega_spec',
            'route',
            'passed',
            'exit_code',
            'status',
            'error_type',
            'created_at',
        ]
