"""Walk the classification of PBW deformation parameters at n = 4.

Runs the five-condition checker on the general symbolic family, shows
why the two supports cannot mix, and prints the generators-and-relations
presentation of each surviving branch.
"""
from permdeform import (
    MapSpec,
    TwoCochain,
    check_conditions,
    classify,
    kappa_C_tri,
    kappa_L1,
    presentation_lines,
)
from permdeform.algebra import parameters

N = 4
A, B, C, A1 = parameters()


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner(f"classification at n = {N}")
report = classify(N)
print(report.to_markdown())

banner("the identity branch alone lifts")
lie = check_conditions(kappa_L1(A1, N), TwoCochain(N))
print(f"L1(a1) on its own: all_pass = {lie.all_pass}")

blocked = check_conditions(kappa_L1(A1, N), kappa_C_tri(C, N))
w = blocked.witness(4)
print(f"L1(a1) + Ctri(c): condition (4) fails {w}")
print("so c = 0 whenever the identity component is present")

banner("presentation of the identity branch")
for line in presentation_lines(N, kappa_L1(A1, N), TwoCochain(N)):
    print(line)

banner("presentation of the off-identity branch")
kl, kc = MapSpec.parse("Ltri(a,b)+Ctri(c)+Cpenta(a,b)").build(N)
for line in presentation_lines(N, kl, kc):
    print(line)
