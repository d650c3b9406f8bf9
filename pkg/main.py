#!/usr/bin/env python3
"""
polarsynth - Main Entry Point
Hypersurfaces invariant under polar linear actions: inspect, synthesize, verify, export
"""

import sys
import argparse
import logging

from config import PROJECT_CONFIG, exit_code
from NumGeo.errors import ConfigParseError, GeometryError


def print_banner():
    """Display project banner"""
    print("\npolarsynth")
    print("Invariant hypersurfaces of polar actions")
    print("-" * 50)


def setup_logging(verbose: bool):
    settings = PROJECT_CONFIG['logging']
    level = logging.DEBUG if verbose else getattr(logging, settings['level'])
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.get('file'):
        handlers.append(logging.FileHandler(settings['file']))
    logging.basicConfig(level=level, format=settings['format'], handlers=handlers, force=True)


def add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=str, help="JSON run config filling unset options")
    parser.add_argument("--seed", type=int, help="Seed for randomized checks")
    parser.add_argument("--tol", type=float, help="Numerical tolerance of the checks")
    parser.add_argument("--fd-step", dest="fd_step", type=float, help="Finite-difference step")
    parser.add_argument("--out", type=str, help="Output directory")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")


def create_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="polarsynth - polar actions and invariant hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("action-info", help="Cohomogeneity, section and polar certificate")
    p.add_argument("--action", type=str, help="Action JSON file")
    add_common_arguments(p)

    p = sub.add_parser("orbit", help="Orbit type, principal normals and Weyl group at a point")
    p.add_argument("--action", type=str, help="Action JSON file")
    p.add_argument("--point", type=float, nargs="+", help="Point coordinates")
    add_common_arguments(p)

    p = sub.add_parser("synth", help="Sweep a profile into an invariant hypersurface")
    p.add_argument("--action", type=str, help="Action JSON file")
    p.add_argument("--profile", type=str, help="Profile JSON file")
    p.add_argument("--mode", choices=["sweep", "rotation", "multirot", "warped"], help="Synthesis mode")
    p.add_argument("--resolution", type=int, help="Profile grid resolution")
    add_common_arguments(p)

    p = sub.add_parser("verify", help="Re-check a written mesh against its metadata")
    p.add_argument("--mesh", type=str, help="Mesh file written by synth")
    add_common_arguments(p)

    p = sub.add_parser("export", help="3-D projection, vertex CSV and PNG preview of a mesh")
    p.add_argument("--mesh", type=str, help="Mesh file written by synth")
    p.add_argument("--keep", type=int, nargs=3, help="Three coordinate indices to keep")
    add_common_arguments(p)

    p = sub.add_parser("benchmark", help="Time the reference scenarios against their limits")
    add_common_arguments(p)
    return parser


def run(args) -> int:
    from Commands import RunConfig, run_command

    cfg = RunConfig.from_args(args)
    return run_command(cfg)


def main(argv=None) -> int:
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    print_banner()

    try:
        code = run(args)
        if code == exit_code('ok'):
            print("\nExecution completed successfully")
        else:
            print(f"\nExecution completed with errors (exit {code})")
        return code

    except ConfigParseError as e:
        print(f"\nConfiguration error: {e}", file=sys.stderr)
        return exit_code('usage')
    except GeometryError as e:
        print(f"\n{type(e).__name__}: {e}", file=sys.stderr)
        return exit_code(e.category)
    except KeyboardInterrupt:
        print("\nExecution interrupted by user")
        return exit_code('unexpected')
    except Exception as e:
        print(f"\nUnexpected error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return exit_code('unexpected')


if __name__ == "__main__":
    sys.exit(main())
