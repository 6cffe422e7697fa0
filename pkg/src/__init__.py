# Package root: `python -m src.cli` runs the command line, `src.main:app` serves the API
