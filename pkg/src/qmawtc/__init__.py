"""One-shot secrecy rate regions for classical-quantum multiple-access wiretap channels."""

__version__ = "0.1.0"
