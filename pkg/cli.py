#!/usr/bin/env python3
"""Command-line entry point for coco-hopf (same as the ``coco-hopf`` script)."""

from coco_hopf.cli import app

if __name__ == "__main__":
    app()
