"""GreenCheck - exact Green functions of finite reductive groups and their congruences."""

__version__ = '0.1.0'
