"""
Command wrapper for the CLI: timing logs and exception-to-exit-code mapping.
"""
import logging
import sys
import time

from app.config.constants import EXIT_INVALID_INPUT, EXIT_RESOURCE_CAP
from app.config.settings import settings
from app.core.exceptions import ResourceCapException, ValidationException

logger = logging.getLogger(__name__)


def run_command(handler, args) -> int:
    """
    Run one command handler and map failures to exit codes.

    Args:
        handler: Callable taking the parsed args and returning an exit code
        args: argparse namespace; `command_name` is used for logging

    Returns:
        0 on success, 1 for invalid input, 2 when a resource cap is exceeded
    """
    name = getattr(args, "command_name", handler.__name__)
    start_time = time.time()
    logger.info("Running command: %s", name)

    try:
        code = handler(args)
        logger.info("Command completed: %s Status: %d Duration: %.3fs",
                    name, code, time.time() - start_time)
        return code

    except ValidationException as e:
        logger.warning("Invalid input for %s: %s", name, e.message)
        print(f"error: {e.message}", file=sys.stderr)
        for violation in e.details.get("violations", []):
            print(f"  axiom ({violation['axiom']}) at {list(violation['witness'])}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    except ResourceCapException as e:
        logger.warning("Resource cap hit in %s: %s", name, e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_RESOURCE_CAP

    except Exception as e:
        logger.error("Command failed: %s Error: %s", name, str(e), exc_info=True)
        detail = f": {e}" if settings.DEBUG else ""
        print(f"error: unexpected failure{detail}", file=sys.stderr)
        return EXIT_INVALID_INPUT
