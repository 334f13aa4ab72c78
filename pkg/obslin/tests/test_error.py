# -*- coding: utf-8 -*-
import unittest

from obslin import error


class TestError(unittest.TestCase):
    def test_error_unicode_message(self):
        message = u"é"
        exc = error.ParseError(message)
        self.assertEqual(str(exc), message)
        self.assertEqual(exc.info, {})

    def test_error_info(self):
        exc = error.SingularMatrixError("singular", {'column': 1})
        self.assertEqual(exc.message, "singular")
        self.assertEqual(exc.info['column'], 1)
        self.assertEqual(repr(exc), "SingularMatrixError('singular')")

    def test_linalg_hierarchy(self):
        for cls in (
            error.SingularMatrixError,
            error.SpectraOverlapError,
            error.ConvergenceError,
        ):
            self.assertTrue(issubclass(cls, error.LinAlgError))
        for cls in (
            error.ParseError,
            error.DomainError,
            error.AssumptionError,
            error.ResonanceError,
            error.TrainingError,
            error.NewtonError,
            error.InternalError,
        ):
            self.assertTrue(issubclass(cls, error.Error))
            self.assertFalse(issubclass(cls, error.LinAlgError))
