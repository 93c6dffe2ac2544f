"""Workbench de álgebras de Lie (super)vectoriales modulares en aritmética exacta."""

__version__ = "0.3.0"
