"""telesum: symbolic summation for nested harmonic sums.

Subpackages and modules:
  exact      rationals, polynomials, rational functions, linear solving
  hsum       harmonic-sum vectors, canonical expression algebra, limits
  telescope  Gosper-style and creative telescoping with certificates
  recsolve   recurrence guessing, verification, and closed-form solving
  epsseries  epsilon expansion of Gamma-function products
  numeval    certified high-precision numeric evaluation
  pipeline   end-to-end derivations for single and double sums
  dsl / cli  expression language and command-line front end
"""

__version__ = "0.1.0"
