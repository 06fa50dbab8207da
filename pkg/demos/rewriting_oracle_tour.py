"""Drive the rewriting oracle directly on a worked S_3 instance.

Builds the quotient of T(V) # S_3 by the deformed commutator relations
with a = 1, c = 2, prints the rewriting rules, reduces a few words to
normal form, resolves every overlap ambiguity, and counts the monomial
basis through degree 3.
"""
from permdeform import (
    MapSpec,
    RewriteSystem,
    check_overlaps,
    dimension_census,
    normal_form,
    parse_perm,
)

N = 3


def banner(text):
    print()
    print(text)
    print("-" * len(text))


kl, kc = MapSpec.parse("Ltri(1,0)+Ctri(2)").build(N)
rs = RewriteSystem(kl, kc)

banner("rewriting rules")
for rule in rs.rules():
    print(rule)

banner("normal forms")
g = parse_perm("(1 2 3)", N)
for word in ([2, 1], [3, 1], [g, 1], [3, 2, 1]):
    letters = "*".join(f"e{x}" if isinstance(x, int) else str(x) for x in word)
    print(f"{letters}  ->  {normal_form(rs, word)}")

banner("overlap resolution")
report = check_overlaps(rs)
print(report)

banner("monomial basis census")
for degree, dim in enumerate(dimension_census(rs, maxdeg=3)):
    print(f"deg <= {degree}: {dim}")

banner("a near miss")
bad = RewriteSystem(*MapSpec.parse("L1(1)+Ctri(1)").build(N))
failed = check_overlaps(bad)
print(failed)
print(f"unresolved word: {failed.ambiguity.word}")
print(f"difference of the two reductions: {failed.ambiguity.difference}")
