"""
config.py

Layered run settings: built-in defaults, then a flat key = value config
file, then command-line flags. The config file is found through
--config, else the PINCHPERF_CONFIG environment variable.

File format:

    # comment
    alpha = 0.05
    strategy = pinch-at-user-x, conventional-feed-point
    range = 90:115:1
"""
import dataclasses
import logging
import os
from dataclasses import dataclass
from typing import Tuple

from pinchperf.errors import ConfigError
from pinchperf.model import Deployment, dbm_to_watts
from pinchperf.oracles import Strategy

log = logging.getLogger(__name__)

CONFIG_ENV = 'PINCHPERF_CONFIG'

AXES = ('gamma_t_db', 'alpha', 'd_x')
METRICS = ('outage', 'rate')
FORMATS = ('csv', 'json')

SEED_LIMIT = 1 << 64


def parse_range(text):
    """
    parse_range: 'START:STOP:STEP' -> (start, stop, step)
    """
    if isinstance(text, (tuple, list)):
        parts = list(text)
    else:
        parts = str(text).split(':')
    if len(parts) != 3:
        raise ConfigError("range must be START:STOP:STEP, got %r" % (text,))
    return tuple(_float('range', part) for part in parts)


def parse_list(text):
    """
    parse_list: 'a, b' or ['a', 'b,c'] -> ('a', 'b', 'c')
    """
    if isinstance(text, str):
        text = [text]
    items = []
    for chunk in text:
        items.extend(item.strip() for item in str(chunk).split(','))
    return tuple(item for item in items if item)


def _float(key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError("%s: expected a number, got %r" % (key, value))


def _int(key, value):
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError("%s: expected an integer, got %r" % (key, value))
    if not number.is_integer():
        raise ConfigError("%s: expected an integer, got %r" % (key, value))
    return int(number)


def _strategies(key, value):
    strategies = []
    for name in parse_list(value):
        try:
            strategies.append(Strategy(name))
        except ValueError:
            raise ConfigError("%s: unknown strategy %r (choose from %s)"
                              % (key, name, ', '.join(s.value for s in Strategy)))
    return tuple(strategies)


def _metrics(key, value):
    metrics = parse_list(value)
    for name in metrics:
        if name not in METRICS:
            raise ConfigError("%s: unknown metric %r (choose from %s)"
                              % (key, name, ', '.join(METRICS)))
    return metrics


def _choice(choices):
    def convert(key, value):
        value = str(value).strip()
        if value not in choices:
            raise ConfigError("%s: %r is not one of %s"
                              % (key, value, ', '.join(choices)))
        return value
    return convert


# Format:
#        {config key: (Settings field, converter: (key, raw) -> value)}
# Converters accept both file strings and values already parsed by argparse.
KEYS = {
    'd_x':          ('d_x', _float),
    'd_y':          ('d_y', _float),
    'h':            ('h', _float),
    'alpha':        ('alpha', _float),
    'f_c':          ('f_c', _float),
    'n_eff':        ('n_eff', _float),
    'sigma2_dbm':   ('sigma2_dbm', _float),
    'n_antennas':   ('n_antennas', _int),
    'gamma_thr':    ('gamma_thr', _float),
    'gamma_t_db':   ('gamma_t_db', _float),
    'axis':         ('axis', _choice(AXES)),
    'range':        ('sweep_range', lambda key, value: parse_range(value)),
    'strategy':     ('strategies', _strategies),
    'metric':       ('metrics', _metrics),
    'samples':      ('samples', _int),
    'seed':         ('seed', _int),
    'format':       ('format', _choice(FORMATS)),
    'workers':      ('workers', _int),
}


@dataclass(frozen=True)
class Settings:
    """
    Every knob a run can turn. Units: metres, Hz, dBm for the noise
    power, dB for the transmit SNR; gamma_thr is linear.
    """
    d_x: float = 10.0
    d_y: float = 10.0
    h: float = 3.0
    alpha: float = 0.01
    f_c: float = 28e9
    n_eff: float = 1.4
    sigma2_dbm: float = -90.0
    n_antennas: int = 1
    gamma_thr: float = 100.0
    gamma_t_db: float = 100.0
    axis: str = 'gamma_t_db'
    sweep_range: Tuple[float, float, float] = (90.0, 115.0, 1.0)
    strategies: Tuple[Strategy, ...] = (Strategy.PINCH_AT_USER_X,
                                        Strategy.CONVENTIONAL)
    metrics: Tuple[str, ...] = ('outage',)
    samples: int = 1000000
    seed: int = 0
    format: str = 'csv'
    workers: int = 1

    def __post_init__(self):
        if self.samples < 0:
            raise ConfigError("samples must be >= 0, got %r" % self.samples)
        if not 0 <= self.seed < SEED_LIMIT:
            raise ConfigError("seed must fit in 64 bits, got %r" % self.seed)
        if self.workers < 1:
            raise ConfigError("workers must be >= 1, got %r" % self.workers)
        if not self.gamma_thr > 0:
            raise ConfigError("gamma_thr must be > 0, got %r" % self.gamma_thr)

    def deployment(self):
        """
        deployment: -> Deployment at gamma_t_db
        """
        base = Deployment(d_x=self.d_x, d_y=self.d_y, h=self.h,
                          alpha=self.alpha, f_c=self.f_c, n_eff=self.n_eff,
                          sigma2=dbm_to_watts(self.sigma2_dbm),
                          n_antennas=self.n_antennas)
        return base.with_gamma_t_db(self.gamma_t_db)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def parse_config_text(text, source='<config>'):
    """
    parse_config_text: file contents -> {config key: raw string}
    """
    values = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError("%s:%d: expected key = value, got %r"
                              % (source, number, line))

        key, value = (part.strip() for part in line.split('=', 1))
        if key not in KEYS:
            raise ConfigError("%s:%d: unknown key %r" % (source, number, key))
        values[key] = value

    return values


def parse_config_file(path):
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as err:
        raise ConfigError("cannot read config file %s: %s" % (path, err))
    return parse_config_text(text, source=path)


def coerce(values):
    """
    coerce: {config key: raw} -> {Settings field: typed value}
    """
    fields = {}
    for key, raw in values.items():
        if key not in KEYS:
            raise ConfigError("unknown setting %r" % key)
        field, convert = KEYS[key]
        fields[field] = convert(key, raw)
    return fields


def find_config_path(explicit=None, environ=None):
    if explicit:
        return explicit
    environ = os.environ if environ is None else environ
    return environ.get(CONFIG_ENV) or None


def load_settings(overrides=None, config_path=None, environ=None):
    """
    load_settings: {config key: value}, path, environ -> Settings

    Applies defaults, then the config file, then overrides (command-line
    flags, keyed like the config file). Keys whose value is None are
    treated as not given.
    """
    fields = {}

    path = find_config_path(config_path, environ)
    if path:
        log.debug("reading settings from %s", path)
        fields.update(coerce(parse_config_file(path)))

    given = dict((key, value) for key, value in (overrides or {}).items()
                 if value is not None)
    fields.update(coerce(given))

    return Settings(**fields)