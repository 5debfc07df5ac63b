"""Entry point for python -m affinesl2."""

from .cli import main

if __name__ == "__main__":
    main()
