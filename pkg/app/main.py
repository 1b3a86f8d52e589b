"""
Main application module for the forcing workbench.

Runs the command-line interface; the CLI group builds the configured
workbench through the application factory.
"""

from app.cli import main

if __name__ == "__main__":
    main()
