"""qcongruence: exact verification of q-supercongruences and q-identities.

A small computer-algebra kernel (rationals, q-polynomials, cyclotomic
arithmetic, one-parameter rational functions, truncated power series) plus a
catalog of verifiable statements and a CLI harness that checks each of them
with exact arithmetic and reports structured verdicts.
"""

__version__ = "0.1.0"
