"""Verdicts recorded by the acceptance tests, printed in the terminal summary."""

RESULTS: list[tuple[int, bool, float, float, str]] = []
