"""
harmconv - API Views

REST endpoints mirroring the `harmconv` command: shear construction,
the dilatation of f0 * f, criterion checks, worked examples and the
history of check runs.
"""

from rest_framework import status
from rest_framework.pagination import PageNumberPagination
from rest_framework.response import Response
from rest_framework.views import APIView

from .exceptions import HarmconvError
from .models import CheckRun
from .serializers import (
    CheckRequestSerializer,
    CheckRunListSerializer,
    CheckRunSerializer,
    DilatationRequestSerializer,
    MoebiusQuerySerializer,
    RationalMapSerializer,
    ShearRequestSerializer,
)
from .services import harmconv_service


# ============================================
# Pagination Classes
# ============================================

class StandardResultsSetPagination(PageNumberPagination):
    page_size = 50
    page_size_query_param = 'page_size'
    max_page_size = 200


# ============================================
# Helper Functions
# ============================================

def error_response(exc: HarmconvError):
    """Render a HarmconvError as a 400 response."""
    return Response(
        {
            'error': exc.message,
            'error_type': exc.error_type,
        },
        status=status.HTTP_400_BAD_REQUEST
    )


# ============================================
# Construction Endpoints
# ============================================

class ShearView(APIView):
    """
    API endpoint for the shear construction.

    POST /api/shear/
    """

    def post(self, request):
        serializer = ShearRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        try:
            _, payload = harmconv_service.shear(data['gamma'], data['omega'], data['order'])
        except HarmconvError as e:
            return error_response(e)
        return Response(payload)


class DilatationView(APIView):
    """
    API endpoint for the dilatation of f0 * f.

    POST /api/dilatation/
    """

    def post(self, request):
        serializer = DilatationRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        try:
            omega_tilde = harmconv_service.dilatation(data['gamma'], data['omega'])
        except HarmconvError as e:
            return error_response(e)
        return Response(RationalMapSerializer(omega_tilde).data)


# ============================================
# Criteria Endpoints
# ============================================

class CheckView(APIView):
    """
    API endpoint to decide the criterion and verify f0 * f.

    POST /api/check/

    A failed verification is still a 200 response; ``passed`` and
    ``exit_code`` carry the verdict.
    """

    def post(self, request):
        serializer = CheckRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        try:
            payload, _ = harmconv_service.check(data['gamma'], data['omega'])
        except HarmconvError as e:
            return error_response(e)
        return Response(payload)


class MoebiusCriteriaView(APIView):
    """
    API endpoint for the Moebius-case criterion report.

    GET /api/criteria/moebius/?re_a=&im_a=&gamma=
    """

    def get(self, request):
        serializer = MoebiusQuerySerializer(data=request.query_params)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        try:
            report = harmconv_service.moebius_criteria(complex(data['re_a'], data['im_a']), data['gamma'])
        except HarmconvError as e:
            return error_response(e)
        return Response(report)


class ExampleView(APIView):
    """
    API endpoint for the worked examples.

    GET /api/examples/<case_id>/
    """

    def get(self, request, case_id):
        try:
            case, f, conv = harmconv_service.example(case_id)
        except HarmconvError as e:
            if e.error_type == 'unknown_case':
                return Response({'error': e.message, 'error_type': e.error_type}, status=status.HTTP_404_NOT_FOUND)
            return error_response(e)
        return Response({
            'map': harmconv_service.example_payload(case, f),
            'convolved': harmconv_service.example_payload(case, conv),
        })


# ============================================
# Run History Endpoints
# ============================================

class RunsListView(APIView):
    """
    API endpoint for listing check runs.

    GET /api/runs/
    """
    pagination_class = StandardResultsSetPagination

    def get(self, request):
        route = request.query_params.get('route')
        passed = request.query_params.get('passed')

        queryset = CheckRun.objects.all()
        if route:
            queryset = queryset.filter(route=route)
        if passed is not None:
            queryset = queryset.filter(passed=passed.lower() in ('true', '1', 'yes'))

        paginator = StandardResultsSetPagination()
        page = paginator.paginate_queryset(queryset, request)

        if page is not None:
            serializer = CheckRunListSerializer(page, many=True)
            return paginator.get_paginated_response(serializer.data)

        serializer = CheckRunListSerializer(queryset[:100], many=True)
        return Response(serializer.data)


class RunDetailView(APIView):
    """
    API endpoint for retrieving a single check run.

    GET /api/runs/<run_id>/
    """

    def get(self, request, run_id):
        try:
            run = CheckRun.objects.get(run_id=run_id)
        except CheckRun.DoesNotExist:
            return Response(
                {'error': 'Run not found'},
                status=status.HTTP_404_NOT_FOUND
            )
        return Response(CheckRunSerializer(run).data)
