"""Modal and temporal logic toolkit with a Hilbert proof kernel."""

__version__ = "0.1.0"
