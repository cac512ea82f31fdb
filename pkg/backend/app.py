"""
Starlikeness radii toolkit - command-line application
"""

import logging
import os

import click
import colorama
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Configure logging
logging.basicConfig(level=os.getenv('STARRAD_LOG_LEVEL', 'INFO').upper(),
                    format='%(levelname)s %(name)s: %(message)s')
logger = logging.getLogger(__name__)

VERSION = '1.0.0'


def create_app() -> click.Group:
    """Create and configure the command group."""
    colorama.just_fix_windows_console()

    @click.group()
    @click.version_option(VERSION, prog_name='starrad')
    @click.option('--log-level', default=None,
                  type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
                  help='Override STARRAD_LOG_LEVEL')
    def app(log_level):
        """Radii of starlikeness for the classes G1, G2, G3."""
        if log_level:
            logging.getLogger().setLevel(log_level.upper())

    # Import and register commands
    from api.table import table_command
    from api.verify import verify_command
    from api.dump import dump_command
    from api.envelope import envelope_command

    app.add_command(table_command)
    app.add_command(verify_command)
    app.add_command(dump_command)
    app.add_command(envelope_command)

    return app


app = create_app()

if __name__ == '__main__':
    app()
