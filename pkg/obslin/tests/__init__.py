# -*- coding: utf-8 -*-
import os
import shutil
import tempfile
import unittest

from obslin import benchmarks


def _flag(name):
    return os.environ.get(name, '').lower() not in ('', '0', 'false', 'no')


class BaseTestCase(unittest.TestCase):
    """Loads the built-in benchmarks and the test settings given by the
    ``OBSLIN_TEST_*`` environment variables.
    """

    @classmethod
    def setUpClass(cls):
        try:
            runs = int(os.environ.get('OBSLIN_TEST_RUNS', 20))
            workers = int(os.environ.get('OBSLIN_TEST_WORKERS', 1))
        except (ValueError, TypeError):
            raise ValueError("The number of runs and workers must be integers")
        cls.env = {
            'slow': _flag('OBSLIN_TEST_SLOW'),
            'runs': runs,
            'workers': workers,
        }
        cls.bench1 = benchmarks.get('bench1')
        cls.bench2 = benchmarks.get('bench2')


class FileTestCase(BaseTestCase):
    """Gives every test a scratch directory, removed afterwards."""

    def setUp(self):
        self.tmp = tempfile.mkdtemp(prefix='obslin-test-')
        self.addCleanup(shutil.rmtree, self.tmp, True)

    def path(self, *names):
        return os.path.join(self.tmp, *names)
