"""
test_dispatch.py

Tests the Dispatch module.
"""
import unittest
from pinchperf.helpers.dispatch import Dispatch
from pinchperf.helpers.dispatch.tests.fake import FakeCell


class CallbackCheck(object):
    def __init__(self, result=None):
        self.called = False
        self.result = result
        self.seen = []

    def call(self, name, cell):
        self.called = True
        self.seen.append((name, cell.value))
        return self.result


class TestDispatch(unittest.TestCase):
    """
    Tests pinchperf.helpers.dispatch for expected behavior
    """

    def setUp(self):
        self.cells = [FakeCell(90.0), FakeCell(95.0), FakeCell(100.0)]
        self.dispatch = Dispatch(cells=self.cells)
        self.callback_check = CallbackCheck(result=0.5)

    def test_callback_is_called_when_registered(self):
        """
        After registering a callback function, the callback should be
        called when a cell is dispatched.
        """
        self.dispatch.register("test1", self.callback_check.call)
        self.dispatch.run()
        self.assertTrue(self.callback_check.called)

    def test_multiple_callbacks(self):
        """
        Many callbacks should be called on the same cell.
        """
        callbacks = []

        for i in range(0, 10):
            check = CallbackCheck()
            callbacks.append(check)
            self.dispatch.register("test%d" % i, check.call)

        self.dispatch.run()

        for callback in callbacks:
            if not callback.called:
                self.fail("All callback methods should be called")

    def test_every_cell_has_every_column(self):
        """
        No result mapping is missing a registered column, including
        columns whose callback returns None.
        """
        self.dispatch.register("empty", CallbackCheck().call)
        self.dispatch.register("half", self.callback_check.call)

        for values in self.dispatch.run():
            self.assertEqual(dict(values), {"empty": None, "half": 0.5})

    def test_callback_name_collisions_raise_valueerror(self):
        """
        Registering a second column under an existing name should raise
        a ValueError.
        """
        self.dispatch.register("test", None)
        self.assertRaises(ValueError, self.dispatch.register, "test", None)

    def test_results_follow_cell_and_registration_order(self):
        """
        run() returns one mapping per cell, in cell order, with columns
        in registration order.
        """
        self.dispatch.register("b", lambda name, cell: cell.value + 1)
        self.dispatch.register("a", lambda name, cell: cell.value * 2)

        results = self.dispatch.run()

        self.assertEqual(len(results), 3)
        self.assertEqual(list(results[0].keys()), ["b", "a"])
        self.assertEqual(results[2]["a"], 200.0)
        self.assertEqual(self.dispatch.columns, ["b", "a"])

    def test_callback_receives_its_name(self):
        """
        A callback is called with the name it was registered under.
        """
        self.dispatch.register("outage", self.callback_check.call)
        self.dispatch.run()
        self.assertEqual(self.callback_check.seen,
                         [("outage", 90.0), ("outage", 95.0), ("outage", 100.0)])


class TestHeadlessDispatch(unittest.TestCase):
    """
    Tests Dispatch functionality when it is not constructed with cells
    """
    def setUp(self):
        self.headless = Dispatch()

    def test_dispatch_single_cell(self):
        """
        A headless Dispatch can still evaluate cells one at a time.
        """
        self.headless.register("x", lambda name, cell: cell.payload)
        self.assertEqual(self.headless.dispatch(FakeCell(1.0, payload=7)), {"x": 7})

    def test_run_raises_exception(self):
        """
        A ValueError must be raised by a headless Dispatch instance if
        a user attempts to call run().
        """
        self.assertRaises(ValueError, self.headless.run)
