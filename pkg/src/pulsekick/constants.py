"""Physical constants shared across the package. All quantities are SI."""

# Reduced Planck constant, J*s (2018 CODATA exact value).
HBAR = 1.054571817e-34
