"""Entry point for `python -m skeinlab`."""

from .cli import main


if __name__ == "__main__":
    raise SystemExit(main())
