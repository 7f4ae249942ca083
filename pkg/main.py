import sys

from app.routers import cli
from app.utils.logger import setup_logger

# Initialize logger
logger = setup_logger()


def run_cli():
    """Entry point for the Poetry script"""
    sys.exit(cli.main())


if __name__ == "__main__":
    run_cli()
