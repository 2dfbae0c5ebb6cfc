"""Exact oscillator representations and Gelfand-Kirillov dimension by filtration growth."""

__version__ = "0.1.0"
ENGINE = f"oscgk {__version__}"
