"""
test_config.py

Tests layered settings: defaults, config file, then flags.
"""
import shutil
import tempfile
import unittest

from pinchperf.config import (CONFIG_ENV, Settings, coerce, find_config_path,
                              load_settings, parse_config_text, parse_list,
                              parse_range)
from pinchperf.errors import ConfigError, InvalidParameterError
from pinchperf.model import dbm_to_watts
from pinchperf.oracles import Strategy
from pinchperf.tests.Fake import FakeConfigFile


class TestDefaults(unittest.TestCase):
    """
    Settings() with nothing configured
    """

    def test_scenario_defaults(self):
        """
        The default deployment is the 28 GHz, 10 m x 10 m, h = 3 m scenario
        """
        settings = Settings()
        dep = settings.deployment()
        self.assertEqual((dep.d_x, dep.d_y, dep.h, dep.alpha), (10.0, 10.0, 3.0, 0.01))
        self.assertEqual(dep.f_c, 28e9)
        self.assertEqual(dep.n_eff, 1.4)
        self.assertAlmostEqual(dep.sigma2, 1e-12, delta=1e-24)
        self.assertAlmostEqual(dep.gamma_t_db, 100.0, delta=1e-9)

    def test_run_defaults(self):
        """
        Sweep, sampling and output defaults
        """
        settings = Settings()
        self.assertEqual(settings.sweep_range, (90.0, 115.0, 1.0))
        self.assertEqual(settings.axis, 'gamma_t_db')
        self.assertEqual(settings.strategies, (Strategy.PINCH_AT_USER_X, Strategy.CONVENTIONAL))
        self.assertEqual(settings.metrics, ('outage',))
        self.assertEqual(settings.samples, 1000000)
        self.assertEqual(settings.seed, 0)
        self.assertEqual(settings.format, 'csv')

    def test_noise_power(self):
        """
        sigma2_dbm is converted to watts
        """
        dep = Settings(sigma2_dbm=-60.0).deployment()
        self.assertAlmostEqual(dep.sigma2, dbm_to_watts(-60.0), delta=1e-21)

    def test_rejects_bad_values(self):
        """
        Negative samples, oversized seeds, no workers and non-positive
        thresholds are refused
        """
        self.assertRaises(ConfigError, Settings, samples=-1)
        self.assertRaises(ConfigError, Settings, seed=1 << 64)
        self.assertRaises(ConfigError, Settings, seed=-1)
        self.assertRaises(ConfigError, Settings, workers=0)
        self.assertRaises(ConfigError, Settings, gamma_thr=0.0)

    def test_config_error_is_invalid_parameter(self):
        """
        ConfigError is a kind of InvalidParameterError
        """
        self.assertRaises(InvalidParameterError, Settings, samples=-1)


class TestParsing(unittest.TestCase):
    """
    key = value text and value converters
    """

    def test_comments_and_blank_lines(self):
        """
        Comments and blank lines are skipped; values keep their text
        """
        text = "# scenario\n\nalpha = 0.05   # lossy\n  d_x=30\n"
        self.assertEqual(parse_config_text(text), {'alpha': '0.05', 'd_x': '30'})

    def test_unknown_key(self):
        """
        Misspelled keys are an error, not silently ignored
        """
        self.assertRaises(ConfigError, parse_config_text, "alpah = 0.1\n")

    def test_missing_equals(self):
        """
        A line without '=' is an error
        """
        self.assertRaises(ConfigError, parse_config_text, "alpha 0.1\n")

    def test_range(self):
        """
        START:STOP:STEP becomes three floats
        """
        self.assertEqual(parse_range('90:115:0.5'), (90.0, 115.0, 0.5))
        self.assertEqual(parse_range(('1', '2', '3')), (1.0, 2.0, 3.0))
        self.assertRaises(ConfigError, parse_range, '90:115')
        self.assertRaises(ConfigError, parse_range, '90:abc:1')

    def test_list(self):
        """
        Comma-separated items, possibly split over repeated flags
        """
        self.assertEqual(parse_list('a, b'), ('a', 'b'))
        self.assertEqual(parse_list(['a', 'b,c']), ('a', 'b', 'c'))
        self.assertEqual(parse_list(' , '), ())

    def test_coerce(self):
        """
        Raw strings become typed Settings fields
        """
        fields = coerce({'range': '1:2:1', 'strategy': 'pinch-optimal',
                         'metric': 'outage,rate', 'samples': '1e3', 'format': 'json'})
        self.assertEqual(fields, {'sweep_range': (1.0, 2.0, 1.0),
                                  'strategies': (Strategy.PINCH_OPTIMAL,),
                                  'metrics': ('outage', 'rate'),
                                  'samples': 1000,
                                  'format': 'json'})

    def test_bad_values(self):
        """
        Each converter reports the key it failed on
        """
        for values in ({'alpha': 'lots'}, {'samples': '2.5'}, {'strategy': 'yagi'},
                       {'metric': 'latency'}, {'format': 'xml'}, {'axis': 'h'}):
            self.assertRaises(ConfigError, coerce, values)


class TestLayering(unittest.TestCase):
    """
    Flags beat the config file, which beats the defaults
    """

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.config = FakeConfigFile(self.directory,
                                     "alpha = 0.05\nd_x = 30\nseed = 7\n")

    def tearDown(self):
        self.config.close()
        shutil.rmtree(self.directory, ignore_errors=True)

    def test_precedence(self):
        """
        alpha from the flag, d_x from the file, h from the defaults
        """
        settings = load_settings({'alpha': 0.1}, config_path=self.config.path, environ={})
        self.assertEqual(settings.alpha, 0.1)
        self.assertEqual(settings.d_x, 30.0)
        self.assertEqual(settings.seed, 7)
        self.assertEqual(settings.h, 3.0)

    def test_unset_flags_fall_through(self):
        """
        None-valued overrides do not mask the file
        """
        settings = load_settings({'alpha': None, 'd_x': None},
                                 config_path=self.config.path, environ={})
        self.assertEqual(settings.alpha, 0.05)
        self.assertEqual(settings.d_x, 30.0)

    def test_environment_variable(self):
        """
        PINCHPERF_CONFIG names the file when --config is absent
        """
        environ = {CONFIG_ENV: self.config.path}
        self.assertEqual(find_config_path(None, environ), self.config.path)
        self.assertEqual(load_settings(environ=environ).alpha, 0.05)

    def test_explicit_path_wins(self):
        """
        --config beats the environment variable
        """
        self.assertEqual(find_config_path('other.cfg', {CONFIG_ENV: self.config.path}),
                         'other.cfg')

    def test_no_file(self):
        """
        Without a file only defaults and flags apply
        """
        self.assertIsNone(find_config_path(None, {}))
        self.assertEqual(load_settings({'h': 4.0}, environ={}).h, 4.0)

    def test_missing_file(self):
        """
        An unreadable config file is a ConfigError
        """
        self.config.close()
        self.assertRaises(ConfigError, load_settings, config_path=self.config.path,
                          environ={})
