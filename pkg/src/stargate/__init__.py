"""Exact decision procedures around weight filtrations and v-adic proximity conditions."""

__version__ = "0.1.0"
