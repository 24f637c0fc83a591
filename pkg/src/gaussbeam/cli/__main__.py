#!/usr/bin/env python
"""gaussbeam: multiplierless 8-point DFT approximation and ULA beamforming"""
import argparse
import logging
import sys

from prompt_toolkit import HTML, print_formatted_text

from ..utils.args import add_common_flags, add_standard_flags, positive_int
from ..utils.misc import logging_and_error_handling, write_output
from ..utils.settings import load_defaults
from .commands import COMMANDS
from .config import FORMATS, RunConfig

_LOGGER = logging.getLogger(name=__name__)


def _create_parser():
    """Create the parser object"""
    parser = argparse.ArgumentParser(
        prog="gaussbeam",
        description="Multiplierless 8-point DFT approximation for ULA beamforming",
    )
    add_standard_flags(parser)
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    matrix = subparsers.add_parser("matrix", help="Print a transform matrix or its factorization")
    matrix.add_argument(
        "--which", default="approx", choices=("approx", "exact", "stages"), help="Matrix to print"
    )
    matrix.add_argument("--n", type=positive_int, default=None, help="Size of the exact DFT (default 8)")

    verify = subparsers.add_parser("verify", help="Check the factorization and the fast algorithm")
    verify.add_argument(
        "--frames", type=positive_int, default=1000, help="Random frames compared fast vs direct"
    )

    search = subparsers.add_parser("search", help="Rank all symmetric Gaussian-integer candidates")
    search.add_argument("--top-k", type=positive_int, default=10, help="Number of results to show")

    pattern = subparsers.add_parser("pattern", help="Sample the beam patterns")
    pattern.add_argument(
        "--transform", default="approx", choices=("approx", "exact"), help="Transform to evaluate"
    )
    pattern.add_argument(
        "--frequency-ghz", type=float, default=None, metavar="F",
        help="Derive the spacing from this frequency instead of --spacing",
    )
    pattern.add_argument(
        "--design-frequency-ghz", type=float, default=None, metavar="F0",
        help="Frequency at which the spacing is half a wavelength (default 4.0)",
    )
    ensemble = pattern.add_argument_group(title="Perturbation ensemble")
    ensemble.add_argument(
        "--ensemble", default=False, action="store_true",
        help="Emit ensemble statistics of one perturbed beam",
    )
    ensemble.add_argument(
        "--beam", type=int, default=1, choices=range(8), metavar="{0..7}", help="Beam to perturb"
    )
    ensemble.add_argument(
        "--perturb-gain", type=float, default=0.0, metavar="SIGMA", help="Relative gain sigma"
    )
    ensemble.add_argument(
        "--perturb-phase-deg", type=float, default=0.0, metavar="SIGMA", help="Phase sigma in degrees"
    )
    ensemble.add_argument(
        "--trials", type=positive_int, default=None, help="Number of trials (default 200)"
    )

    beamsim = subparsers.add_parser("beamsim", help="Feed one plane wave through the beamformer")
    beamsim.add_argument("--angle", type=float, required=True, metavar="DEG", help="Arrival angle")
    beamsim.add_argument("--amplitude", type=float, default=1.0, help="Wave amplitude")
    beamsim.add_argument("--phase-deg", type=float, default=0.0, help="Wave phase in degrees")
    beamsim.add_argument(
        "--transform", default="approx", choices=("approx", "exact"), help="Transform to use"
    )

    bench = subparsers.add_parser("bench", help="Time the direct and fast algorithms")
    bench.add_argument("--frames", type=positive_int, default=100_000, help="Frames per mode")
    bench.add_argument(
        "--mode", default="both", choices=("direct", "fast", "both"), help="Algorithm(s) to time"
    )
    bench.add_argument("--lanes", type=positive_int, default=1, help="Worker threads")

    for name, subparser in subparsers.choices.items():
        add_common_flags(subparser, formats=FORMATS[name])
    return parser


def main():
    """Main entry point of gaussbeam"""
    parser = _create_parser()
    args = parser.parse_args()

    with logging_and_error_handling(log_level=args.log_level, debug=args.debug):
        # Start actual program logic
        process(args)


def process(args: argparse.Namespace):
    """Main program: the top level code"""
    defaults = load_defaults(args.config)
    config = RunConfig.from_args(args, defaults)
    _LOGGER.debug("Running %s with %r", config.command, config)
    result = COMMANDS[config.command](config)
    write_output(result.text, config.output)
    if result.summary is not None:
        print_formatted_text(result.summary, end="", file=sys.stderr)
    if result.failure is not None:
        raise result.failure
    if config.output is not None:
        print_formatted_text(HTML("<b>Done</b>: wrote {}").format(str(config.output)), file=sys.stderr)


if __name__ == "__main__":
    main()
