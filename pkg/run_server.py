#!/usr/bin/env python3
"""Simple script to run the MoldSched workbench server."""

import os
import subprocess
import sys


def main():
    """Run the MoldSched workbench server."""
    current_dir = os.path.dirname(os.path.abspath(__file__))
    if current_dir not in sys.path:
        sys.path.insert(0, current_dir)
    os.environ['PYTHONPATH'] = current_dir

    from src.config import get_settings
    settings = get_settings()

    try:
        cmd = [
            sys.executable, "-m", "uvicorn",
            "src.api.main:app",
            "--host", settings.host,
            "--port", str(settings.port),
            "--log-level", settings.log_level.lower(),
        ]

        print("Starting MoldSched workbench...")
        print(f"Server will be available at: http://localhost:{settings.port}")
        print(f"API documentation at: http://localhost:{settings.port}/docs")
        print("\nPress Ctrl+C to stop the server.\n")

        subprocess.run(cmd, cwd=current_dir)

    except KeyboardInterrupt:
        print("\nServer stopped by user.")


if __name__ == "__main__":
    main()
