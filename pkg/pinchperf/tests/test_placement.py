"""
test_placement.py

Tests the optimal pinch position against brute-force grid search.
"""
import math
import unittest

import numpy as np

from pinchperf.model import Deployment, UserPosition, received_snr
from pinchperf.placement import (PlacementBranch, objective_field,
                                 optimal_position, optimal_positions,
                                 placement_gain, deviation_bound, snr_objective,
                                 stationarity_residual)


class TestObjective(unittest.TestCase):
    """
    f(x_p) = exp(-alpha x_p) / ((x_m - x_p)^2 + y_m^2 + h^2)
    """

    def test_value(self):
        """
        f(2) for x_m = 5, y_m = 1, h = 3, alpha = 0.1
        """
        dep = Deployment(alpha=0.1)
        expected = math.exp(-0.2) / 19.0
        self.assertAlmostEqual(snr_objective(dep, UserPosition(5.0, 1.0), 2.0), expected,
                               delta=1e-16)

    def test_at_user(self):
        """
        f(x_m) = exp(-alpha x_m) / (y_m^2 + h^2)
        """
        dep = Deployment()
        self.assertAlmostEqual(snr_objective(dep, UserPosition(4.0, 2.0), 4.0),
                               math.exp(-0.04) / 13.0, delta=1e-16)

    def test_lossless_peak(self):
        """
        With alpha = 0 the objective peaks at x_m with value 1/(y_m^2 + h^2)
        """
        dep = Deployment(alpha=0.0)
        user = UserPosition(6.0, 1.0)
        grid = objective_field(0.0, 3.0, 6.0, 1.0, np.linspace(0.0, 10.0, 10001))
        self.assertEqual(np.argmax(grid), 6000)
        self.assertEqual(snr_objective(dep, user, 6.0), 1.0 / 10.0)

    def test_scales_to_received_snr(self):
        """
        received_snr = (eta N P_t / sigma^2) f(x_p)
        """
        dep = Deployment()
        user = UserPosition(3.0, -2.0)
        for x_p in (0.0, 2.5, 3.0, 9.0):
            expected = dep.gain * snr_objective(dep, user, x_p)
            self.assertAlmostEqual(received_snr(dep, x_p, user), expected,
                                   delta=1e-14 * expected)


class TestOptimalPosition(unittest.TestCase):
    """
    Closed-form maximizer
    """

    def test_interior_root(self):
        """
        alpha = 0.01, h = 3, user (5, 2): x* = 5 - 0.13/(1 + sqrt(0.9987))
        """
        dep = Deployment()
        solution = optimal_position(dep, UserPosition(5.0, 2.0))
        self.assertEqual(solution.branch, PlacementBranch.INTERIOR_ROOT)
        self.assertAlmostEqual(solution.x_star, 5.0 - 0.13 / (1.0 + math.sqrt(0.9987)),
                               delta=1e-12)
        self.assertAlmostEqual(5.0 - solution.x_star, 0.0650211, delta=1e-7)

        grid = np.arange(0.0, 10.0 + 1e-12, 1e-4)
        best = grid[np.argmax(objective_field(0.01, 3.0, 5.0, 2.0, grid))]
        self.assertAlmostEqual(solution.x_star, best, delta=1e-4)

    def test_negative_discriminant(self):
        """
        alpha^2 (y_m^2 + h^2) > 1 puts the pinch at the feed point
        """
        dep = Deployment(alpha=0.5)
        solution = optimal_position(dep, UserPosition(2.0, 0.0))
        self.assertEqual(solution.branch, PlacementBranch.FEED_POINT)
        self.assertEqual(solution.x_star, 0.0)
        self.assertLess(solution.discriminant, 0.0)

    def test_lossless(self):
        """
        alpha = 0 returns x_m
        """
        dep = Deployment(alpha=0.0)
        for x_m in (0.0, 3.3, 10.0):
            solution = optimal_position(dep, UserPosition(x_m, 1.0))
            self.assertEqual(solution.x_star, x_m)
            self.assertEqual(solution.branch, PlacementBranch.LOSSLESS)

    def test_double_root(self):
        """
        Delta == 0 with x_m - 1/alpha > 0 takes the double root
        """
        dep = Deployment(alpha=0.25, h=4.0)
        solution = optimal_position(dep, UserPosition(8.0, 0.0))
        self.assertEqual(solution.discriminant, 0.0)
        self.assertEqual(solution.branch, PlacementBranch.DOUBLE_ROOT)
        self.assertEqual(solution.x_star, 4.0)

    def test_stationary_point_behind_feed(self):
        """
        x_o1 <= 0 falls back to the feed point
        """
        dep = Deployment(alpha=0.1)
        solution = optimal_position(dep, UserPosition(0.2, 4.0))
        self.assertEqual(solution.branch, PlacementBranch.FEED_POINT)
        self.assertEqual(solution.x_star, 0.0)

    def test_objective_recomputed(self):
        """
        PlacementSolution.objective is f(x_star)
        """
        dep = Deployment(alpha=0.05)
        user = UserPosition(7.0, -3.0)
        solution = optimal_position(dep, user)
        self.assertEqual(solution.objective, snr_objective(dep, user, solution.x_star))

    def test_vectorized_matches_scalar(self):
        """
        optimal_positions agrees with optimal_position element by element
        """
        dep = Deployment(alpha=0.2, d_x=30.0)
        rng = np.random.default_rng(7)
        x_m = rng.uniform(0.0, 30.0, 200)
        y_m = rng.uniform(-5.0, 5.0, 200)
        x_star, _ = optimal_positions(dep, x_m, y_m)
        for x, y, best in zip(x_m, y_m, x_star):
            self.assertAlmostEqual(optimal_position(dep, UserPosition(x, y)).x_star, best,
                                   delta=1e-12)

    def test_brute_force(self):
        """
        Over 1,000 random scenarios f(x*) is within 1e-9 of the maximum
        over a 10^5-point grid; interior roots are stationary and stay in
        [0, d_x]
        """
        rng = np.random.default_rng(2025)
        for _ in range(1000):
            d_x = float(rng.choice([10.0, 30.0]))
            dep = Deployment(d_x=d_x, h=float(rng.uniform(1.0, 5.0)),
                             alpha=float(rng.uniform(0.0, 0.5)))
            user = UserPosition(float(rng.uniform(0.0, d_x)), float(rng.uniform(-5.0, 5.0)))

            solution = optimal_position(dep, user)
            grid = np.linspace(0.0, d_x, 100000)
            grid_best = float(np.max(objective_field(dep.alpha, dep.h, user.x_m,
                                                     user.y_m, grid)))

            self.assertGreaterEqual(solution.objective, grid_best - 1e-9,
                                    msg="%r %r" % (dep, user))
            self.assertGreaterEqual(solution.x_star, 0.0)
            self.assertLessEqual(solution.x_star, d_x)
            if (solution.branch is PlacementBranch.INTERIOR_ROOT
                    and 0.0 < solution.x_star < d_x):
                self.assertLess(abs(stationarity_residual(dep, user, solution.x_star)), 1e-9)

    def test_lossless_brute_force(self):
        """
        alpha = 0 scenarios also beat the grid
        """
        rng = np.random.default_rng(11)
        dep = Deployment(alpha=0.0, d_x=30.0)
        for _ in range(50):
            user = UserPosition(float(rng.uniform(0.0, 30.0)), float(rng.uniform(-5.0, 5.0)))
            grid = objective_field(0.0, dep.h, user.x_m, user.y_m,
                                   np.linspace(0.0, 30.0, 100000))
            self.assertGreaterEqual(optimal_position(dep, user).objective,
                                    float(np.max(grid)) - 1e-12)


class TestDeviationBound(unittest.TestCase):
    """
    How far the optimum sits from the user
    """

    def test_small_loss_stays_close(self):
        """
        For alpha <= 0.01 and y_m^2 + h^2 <= 34 the optimum is within the
        bound of x_m and never worse than pinching above the user
        """
        rng = np.random.default_rng(3)
        for _ in range(500):
            dep = Deployment(alpha=float(rng.uniform(0.0, 0.01)), d_x=30.0)
            user = UserPosition(float(rng.uniform(0.0, 30.0)), float(rng.uniform(-5.0, 5.0)))
            solution = optimal_position(dep, user)

            self.assertLessEqual(abs(solution.x_star - user.x_m),
                                 deviation_bound(dep, user) + 1e-12)
            at_user = snr_objective(dep, user, user.x_m)
            self.assertGreaterEqual(solution.objective, at_user * (1.0 - 1e-15))

    def test_bound_limits(self):
        """
        The bound is 0 without loss and infinite without a stationary point
        """
        user = UserPosition(5.0, 0.0)
        self.assertEqual(deviation_bound(Deployment(alpha=0.0), user), 0.0)
        self.assertEqual(deviation_bound(Deployment(alpha=0.5), user), math.inf)

    def test_bound_value(self):
        """
        (1 - sqrt(1 - alpha^2 (y^2 + h^2))) / alpha
        """
        user = UserPosition(5.0, 2.0)
        expected = (1.0 - math.sqrt(1.0 - 0.0013)) / 0.01
        self.assertAlmostEqual(deviation_bound(Deployment(), user), expected, delta=1e-12)


class TestPlacementGain(unittest.TestCase):
    """
    f(x*) / f(x_m)
    """

    def test_lossless_is_one(self):
        """
        Without loss the optimum is the user's own x
        """
        self.assertEqual(placement_gain(Deployment(alpha=0.0), UserPosition(4.0, 2.0)), 1.0)

    def test_long_lossy_waveguide(self):
        """
        alpha = 0.1, D_x = 30, user (25, 4): moving the pinch helps
        """
        dep = Deployment(alpha=0.1, d_x=30.0)
        self.assertGreaterEqual(placement_gain(dep, UserPosition(25.0, 4.0)), 1.0)

    def test_feed_point_regime(self):
        """
        With Delta < 0 the gain is f(0)/f(x_m), which exceeds 1 here
        """
        dep = Deployment(alpha=0.5)
        user = UserPosition(2.0, 0.0)
        expected = (1.0 / 13.0) / (math.exp(-1.0) / 9.0)
        self.assertAlmostEqual(placement_gain(dep, user), expected, delta=1e-12)
        self.assertGreater(expected, 1.0)
