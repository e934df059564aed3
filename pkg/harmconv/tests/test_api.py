"""
Tests for the REST endpoints.
"""

import math

from django.test import TestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from harmconv.models import CheckRun


class ConstructionApiTests(TestCase):

    def setUp(self):
        self.client = APIClient()

    def test_shear(self):
        response = self.client.post(reverse('shear'), {'gamma': math.pi, 'omega': 'z', 'order': 16}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['map']['order'], 16)
        self.assertLess(response.data['shear_residual'], 1e-10)
        self.assertEqual(response.data['b1'][1], 0)

    def test_shear_validation(self):
        response = self.client.post(reverse('shear'), {'omega': 'z'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('gamma', response.data)

    def test_parse_error(self):
        response = self.client.post(reverse('dilatation'), {'gamma': 0, 'omega': 'z +'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data['error_type'], 'parse_error')

    def test_non_schlicht_dilatation(self):
        response = self.client.post(reverse('shear'), {'gamma': 0, 'omega': '2*z'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data['error_type'], 'dilatation_not_schlicht')

    def test_dilatation(self):
        response = self.client.post(reverse('dilatation'), {'gamma': 0, 'omega': '-z'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['power'], 1)
        self.assertEqual(len(response.data['num']), 2)
        self.assertEqual(len(response.data['den']), 2)


class CriteriaApiTests(TestCase):

    def setUp(self):
        self.client = APIClient()

    def test_moebius_report(self):
        response = self.client.get(reverse('criteria-moebius'), {'re_a': 0.5, 'im_a': 0, 'gamma': 0})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['v'], -5.25)
        self.assertAlmostEqual(response.data['AB_modulus'], 0.75)
        self.assertTrue(response.data['theorem2_applicable'])
        self.assertTrue(response.data['corollary_flags']['c32'])

    def test_moebius_parameter_outside_disk(self):
        response = self.client.get(reverse('criteria-moebius'), {'re_a': 0.8, 'im_a': 0.8, 'gamma': 0})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_check_records_run(self):
        response = self.client.post(reverse('check'), {'gamma': math.pi, 'omega': '-z^2'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data['passed'])
        self.assertEqual(response.data['exit_code'], 0)
        self.assertEqual(response.data['route'], 'theorem1')
        self.assertTrue(response.data['criterion']['applicable'])

        detail = self.client.get(reverse('runs-detail', args=[response.data['run_id']]))
        self.assertEqual(detail.status_code, status.HTTP_200_OK)
        self.assertEqual(detail.data['omega_spec'], '-z^2')
        self.assertEqual(detail.data['report']['route'], 'theorem1')

    def test_failed_check_is_not_an_http_error(self):
        response = self.client.post(reverse('check'), {'gamma': 0, 'omega': '-z^3'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertFalse(response.data['passed'])
        self.assertEqual(response.data['exit_code'], 2)


class ExampleApiTests(TestCase):

    def setUp(self):
        self.client = APIClient()

    def test_example(self):
        response = self.client.get(reverse('example', args=[2]))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['map']['closed_form_id'], 2)
        self.assertTrue(response.data['convolved']['convolved_with_f0'])

    def test_unknown_example(self):
        response = self.client.get(reverse('example', args=[7]))
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)
        self.assertEqual(response.data['error_type'], 'unknown_case')


class RunsApiTests(TestCase):

    def setUp(self):
        self.client = APIClient()
        CheckRun.objects.create(gamma=0.0, omega_spec='z', route='theorem1', passed=True)
        CheckRun.objects.create(gamma=0.0, omega_spec='-z^3', route='theorem1', passed=False, exit_code=2)
        CheckRun.objects.create(
            gamma=0.0, omega_spec='z +', status='error', exit_code=3, error_type='parse_error'
        )

    def test_list(self):
        response = self.client.get(reverse('runs-list'))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['count'], 3)
        self.assertNotIn('report', response.data['results'][0])

    def test_filters(self):
        response = self.client.get(reverse('runs-list'), {'route': 'theorem1', 'passed': 'false'})
        self.assertEqual(response.data['count'], 1)
        self.assertEqual(response.data['results'][0]['omega_spec'], '-z^3')

    def test_missing_run(self):
        response = self.client.get(reverse('runs-detail', args=['00000000-0000-0000-0000-000000000000']))
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)
        self.assertEqual(response.data['error'], 'Run not found')
