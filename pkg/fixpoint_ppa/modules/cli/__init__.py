# Command Line Module
from .manifest import ManifestError, RunManifest, build_instance, load_machine
from .commands import (
    EXIT_OK, EXIT_INVALID, EXIT_REJECTED, EXIT_BUDGET, SUITES,
    build_parser, configure_logging, main, write_json,
)

__all__ = [
    'ManifestError', 'RunManifest', 'build_instance', 'load_machine',
    'EXIT_OK', 'EXIT_INVALID', 'EXIT_REJECTED', 'EXIT_BUDGET', 'SUITES',
    'build_parser', 'configure_logging', 'main', 'write_json',
]
