"""
RealignBound - command-line entry point

Usage:
    python app.py bound --m 2 --n 2 --ell 2
    python app.py test --criterion both --in state.json
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.commands import run_command


def main():
    """Run the CLI on the process arguments"""
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
