"""Show every log message of the package.

Importing this module is enough, the command line does it for --verbose.
"""

from __future__ import absolute_import

import logging


# View all logs
logging.basicConfig()
logging.getLogger('quditmagic').setLevel(logging.DEBUG)
