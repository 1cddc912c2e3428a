#!/usr/bin/env python3
"""
Convenient run script for the plane-separation solver CLI.
Ensures proper path setup and forwards the command line to main.
"""

import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# Import and run main application
from main import main

if __name__ == "__main__":
    sys.exit(main())
