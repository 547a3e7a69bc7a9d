"""Germ Calculus - exact operator calculus on holomorphic germs

Entry point for the command-line tool.
"""

import sys

from germ_calculus.cli import cli_main


def main() -> int:
    """Main entry point"""
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
