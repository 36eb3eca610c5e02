"""
Toolkit constants.
These are hardcoded values that don't change between environments.
"""

# Default irreducible moduli for GF(p^m), coefficients low degree first.
# GF(4) uses t^2+t+1 so that the golden GF(4) tables reproduce exactly.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),         # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),      # t^3 + t + 1
    (2, 4): (1, 1, 0, 0, 1),   # t^4 + t + 1
    (3, 2): (1, 0, 1),         # t^2 + 1
    (3, 3): (1, 2, 0, 1),      # t^3 + 2t + 1
    (5, 2): (2, 0, 1),         # t^2 + 2
}

# Name of the indeterminate in GF(p^m) modulus strings
MODULUS_VARIABLE = "t"

# Formal variables of the invariant polynomials
QP_VARIABLES = ("s", "t")
PHI_E_VARIABLES = ("q",)
PHI_SQP_VARIABLES = ("q", "z")

# CLI exit codes
EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_RESOURCE_CAP = 2

# Gauss code grammar
COMPONENT_SEPARATOR = ","
MINUS_SIGNS = ("-", "−")

# Gram matrix string grammar
GRAM_ROW_SEPARATOR = ";"
GRAM_ENTRY_SEPARATOR = ","

# Golden tables shipped with the repository
GOLDEN_DIR = "data/golden"
ERRATA_FILE = "errata.json"
