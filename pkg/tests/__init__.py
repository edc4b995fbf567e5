"""
Lambda-atom Test Suite

- Unit tests: closed-form solver, field state, indicators, settings
- Integration tests: RK4 oracle equivalence and sweeps
- End-to-end tests: the command-line tool
"""

# Numerical tolerances shared across the suite
TOLERANCES = {
    "norm": 1e-9,
    "initial_condition": 1e-10,
    "root_residual": 1e-9,
    "oracle": 1e-6,
    "entropic_bound": 1e-4,
}
