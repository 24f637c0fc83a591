import contextlib
import logging
import sys
import traceback
from pathlib import Path

from prompt_toolkit import print_formatted_text, HTML

from .errors import UserErrorMessage, FormattedException, UsageError

_LOGGER = logging.getLogger(name=__name__)


@contextlib.contextmanager
def logging_and_error_handling(*, log_level: str, debug: bool):
    # Set up logging
    log_level = getattr(logging, log_level.upper())
    logging.basicConfig(format="%(levelname)s [%(name)s]: %(message)s", level=log_level)
    try:
        yield
    except UserErrorMessage as e:
        if debug:
            traceback.print_exception(e)
        print_formatted_text(HTML("<ansired><b>ERROR:</b></ansired>"), e, file=sys.stderr)
        sys.exit(e.exit_code)
    except FormattedException as e:
        traceback.print_exception(e)
        print_formatted_text(HTML("<ansired><b>UNEXPECTED ERROR:</b></ansired>"), e, file=sys.stderr)
        sys.exit(e.exit_code)


def write_output(text: str, output: Path | None) -> None:
    """Write rendered output to a file, or standard output if no path is given

    Output is always UTF-8 with LF line endings.
    """
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with output.open(mode="wt", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise UsageError("--output", f"cannot write {output}: {e.strerror}") from e
    _LOGGER.info("Wrote %d characters to %s", len(text), output)
