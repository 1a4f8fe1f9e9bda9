"""Experiment harness and command line for fuchsian-growth: bound suites, reports, exports."""
