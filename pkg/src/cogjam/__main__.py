"""Entry point for python -m cogjam."""

from .cli import main

if __name__ == "__main__":
    main()
