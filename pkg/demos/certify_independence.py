"""Deciding linear independence of the coefficient family.

A combination sum_x alpha_x u_x is a derivative inside the pole-localized
rational field exactly when all its simple-pole residues vanish, so the
verdict is the exact nullspace of the residue matrix (rows: poles,
columns: letters).  Simple poles put ones on the diagonal -> independent;
double poles have no residues at all -> dependent, with an explicit
rational witness.

Run: python3 demos/certify_independence.py
"""

from hyperlog import (
    Alphabet,
    Multiplier,
    PoleLocalizedRational,
    PoleSet,
    certify,
    format_gaussian,
    format_plr_pretty,
    residue_matrix,
    witness_to_degree1_relation,
    format_ncpoly,
)

alphabet = Alphabet(["x0", "x1"])
poles = PoleSet(["0", "1"])


def show(name, M):
    print(f"== {name} ==")
    R = residue_matrix(M)
    for i, row in enumerate(R):
        cells = "  ".join(f"{format_gaussian(c):>4s}" for c in row)
        print(f"  residue row (pole {format_gaussian(poles[i])}):  {cells}")
    verdict = certify(M)
    if verdict.is_independent:
        print(f"  verdict: INDEPENDENT (pivot columns {list(verdict.pivots)})")
    else:
        alpha = ", ".join(format_gaussian(a) for a in verdict.alpha)
        print(f"  verdict: DEPENDENT  alpha = ({alpha})")
        print(f"  witness f with d(f) = sum alpha_x u_x:  f = "
              f"{format_plr_pretty(verdict.witness_f)}")
    print()
    return verdict


# simple poles: the polylogarithm multiplier
M_polylog = Multiplier.fuchsian(alphabet, poles, {0: (0, 1), 1: (1, -1)})
show("u0 = 1/z, u1 = 1/(1-z)", M_polylog)

# double poles: independence fails
M_double = Multiplier(
    alphabet,
    poles,
    {
        0: PoleLocalizedRational.pole_term(poles, 0, 2, 1),
        1: PoleLocalizedRational.pole_term(poles, 1, 2, 1),
    },
)
verdict = show("u0 = 1/z^2, u1 = 1/(1-z)^2", M_double)

# the witness integrates to a degree-1 coefficient identity
rel = witness_to_degree1_relation(verdict, M_double, -1)
print("degree-1 identity from the witness (basepoint z0 = -1):")
print(f"  0 = {format_ncpoly(rel.poly, alphabet)}   [{rel.status.value}]")
print("  i.e. <S|x0> = 1/z0 - 1/z, an element of the rational field itself")
