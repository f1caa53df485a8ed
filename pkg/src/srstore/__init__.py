"""srstore: exact-arithmetic toolkit for shared-randomness-assisted
erasure-coded storage.

Subpackages cover finite-field arithmetic, exact linear algebra, linear
scheme construction, feasibility auditing, storage capacity regions, a
coset-state quantum lifting, and an end-to-end simulation harness.
"""

__version__ = "0.1.0"
