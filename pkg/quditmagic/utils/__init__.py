from __future__ import absolute_import

import json
import logging
import os
import warnings

import numpy as np

from ..exceptions import ApproximateSolutionWarning, ConfigError, GuardExceededError


logger = logging.getLogger(__name__)

THREADS_ENV = 'QUDITMAGIC_THREADS'

WARNINGS_ENV = 'QUDITMAGIC_SHOW_WARNINGS'


class CustomEncoder(json.JSONEncoder):
    """JSON encoder that allows registering classes.

    Usage:
        >>> class MyClass(object): ...
        >>> CustomEncoder.register(MyClass, lambda x: 'mine')
        >>> json.dumps(MyClass(), cls=CustomEncoder)
        '"mine"'
    """

    _RegisteredClasses = {}

    @classmethod
    def register(cls, encodeCls, encodeFn):
        """Register a class and how to encode it."""
        cls._RegisteredClasses[encodeCls] = encodeFn

    def default(self, o):
        """Handle serialisation for all registered classes."""
        for cls, fn in self._RegisteredClasses.items():
            if isinstance(o, cls):
                return fn(o)
        return super(CustomEncoder, self).default(o)


CustomEncoder.register(np.integer, int)
CustomEncoder.register(np.floating, float)
CustomEncoder.register(np.bool_, bool)
CustomEncoder.register(np.ndarray, lambda array: array.tolist())


def loadJson(path):
    """Load a JSON document.

    Raises:
        ConfigError: If the file is missing or is not valid JSON.
    """
    try:
        with open(path, 'r') as f:
            return json.loads(f.read())
    except (IOError, OSError) as e:
        raise ConfigError('unable to read {!r}: {}'.format(path, e))
    except ValueError as e:
        raise ConfigError('invalid JSON in {!r}: {}'.format(path, e))


def dumpJson(data):
    """Serialise data with the registered encoders and stable key order."""
    return json.dumps(data, indent=2, sort_keys=True, cls=CustomEncoder)


def saveJson(path, data):
    """Save data as JSON, returning the path written."""
    with open(path, 'w') as f:
        f.write(dumpJson(data))
    logger.info('Written %s', path)
    return path


def getThreadCount(default=1):
    """Get the number of worker processes from the environment."""
    value = os.environ.get(THREADS_ENV)
    if not value:
        return default
    try:
        count = int(value)
    except ValueError:
        raise ConfigError('{} must be an integer, got {!r}'.format(THREADS_ENV, value))
    if count < 1:
        raise ConfigError('{} must be at least 1'.format(THREADS_ENV))
    return count


def sampleSeedSequence(masterSeed, sampleIndex):
    """Get the seed sequence for one sample.
    The result only depends on the pair, never on worker layout.
    """
    return np.random.SeedSequence([int(masterSeed), int(sampleIndex)])


def sampleRng(masterSeed, sampleIndex):
    """Get an independent generator for one sample."""
    return np.random.default_rng(sampleSeedSequence(masterSeed, sampleIndex))


def sampleSeed(masterSeed, sampleIndex):
    """Get a printable integer identifying the derived seed of a sample."""
    return int(sampleSeedSequence(masterSeed, sampleIndex).generate_state(1)[0])


def checkGuard(value, limit, what, hint=None):
    """Raise a sizing report if a guarded quantity is too large.

    Parameters:
        value (int): Size being requested.
        limit (int): Largest allowed size.
        what (str): Description used in the message.
        hint (str, optional): Extra advice appended to the message.
    """
    if value > limit:
        msg = '{} is {}, above the limit of {}'.format(what, value, limit)
        if hint:
            msg += ' ({})'.format(hint)
        raise GuardExceededError(msg)


def _setupWarnings():
    """Setup visibility of package warnings.

    Setting the `QUDITMAGIC_SHOW_WARNINGS` environment variable
    will run this on import.
    """
    warnings.simplefilter('always', ApproximateSolutionWarning)


if os.environ.get(WARNINGS_ENV) == '1':
    _setupWarnings()
