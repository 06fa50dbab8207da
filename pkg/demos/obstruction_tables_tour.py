"""Reproduce the obstruction bookkeeping behind the off-identity branch.

Checks the first obstruction identity phi(kL, kL) = 2 psi(kC) at n = 5,
then regenerates two of the worked second-obstruction tables and shows
that their columns sum to zero.
"""
from permdeform import case_tables, kappa_C_penta, kappa_L_tri, phi, psi
from permdeform.algebra import parameters
from permdeform.render import table_csv

A, B, C, A1 = parameters()


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("first obstruction at n = 5")
kl = kappa_L_tri(A, B, 5)
lhs = phi(kl, kl)
rhs = psi(kappa_C_penta(A, B, 5)) * 2
print(f"phi(kL, kL) == 2 psi(kC): {lhs == rhs}")
g = next(iter(lhs.support()))
print(f"sample component at {g} on (e1,e2,e3): {lhs.value(g, 1, 2, 3)}")

banner("second obstruction, double-transposition case (markdown)")
(table,) = case_tables("2-2")
print(table.to_markdown())

banner("second obstruction, 7-cycle case (csv)")
(table,) = case_tables("7cycle")
print(table_csv(table))
