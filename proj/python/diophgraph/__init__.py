"""Diophantine graphs: vertices are positive integers, a and b are adjacent
when a*b + 1 is a perfect square."""

from ._core import *  # noqa: F401,F403
from ._core import DiophGraph, InvariantViolation, BudgetExceeded, ParseError  # noqa: F401

NON_FOUR_COLORABLE_80 = [
    1, 3, 8, 120, 2, 4, 12, 20, 24, 6, 22, 92, 204, 420, 36, 78, 84, 140, 210, 360,
    364, 560, 60, 14, 40, 136, 220, 312, 33, 9, 10, 52, 56, 728, 11, 48, 90, 168, 408, 840,
    5, 7, 28, 30, 34, 35, 46, 70, 88, 132, 180, 240, 2184, 280, 16, 21, 32, 44, 156, 816,
    380, 13, 39, 72, 80, 96, 462, 528, 1140, 2380, 23, 102, 105, 110, 152, 264, 456, 858, 2520, 1365,
]
