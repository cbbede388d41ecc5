"""Extension classification, class E sections and exact sequences."""
