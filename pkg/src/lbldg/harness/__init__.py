"""Seeded property-testing harness: generators, axiom and theorem suites,
report serialization, and the command-line interface."""
