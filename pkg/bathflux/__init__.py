"""Energía y corriente de un baño acoplado a una cadena de espines"""

__version__ = "1.0.0"
