"""
Main entry point for the forcing workbench.

This file is the top-level entry point, delegating to the command-line
interface in the app package.
"""

from app.main import main

if __name__ == "__main__":
    main()
