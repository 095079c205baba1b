"""Words, the graded lexicographic order, and the shuffle Hopf structure.

Run: python3 demos/shuffle_words.py
"""

import math

from hyperlog import Alphabet, coshuffle, graded_lex_compare, shuffle

alphabet = Alphabet(["x0", "x1"])
fmt = alphabet.format_word

print("== graded lexicographic order ==")
pairs = [("x0", "x1"), ("x1.x1", "x0.x0.x0"), ("x0.x1", "x1.x0")]
for lt, rt in pairs:
    u, v = alphabet.word(lt), alphabet.word(rt)
    rel = {-1: "<", 0: "=", 1: ">"}[graded_lex_compare(u, v)]
    print(f"  {lt:10s} {rel} {rt}   (shorter words first, then letter order)")

print()
print("== shuffle products ==")
for lt, rt in [("x0", "x1"), ("x0", "x0"), ("x0", "x0.x1")]:
    u, v = alphabet.word(lt), alphabet.word(rt)
    terms = shuffle(u, v)
    body = " + ".join(
        (f"{n}*{fmt(w)}" if n > 1 else fmt(w)) for w, n in sorted(terms.items())
    )
    print(f"  {lt} ⧢ {rt} = {body}")
    total = sum(terms.values())
    print(f"      coefficient sum {total} = C({len(u)+len(v)},{len(u)}) =",
          math.comb(len(u) + len(v), len(u)))

print()
print("== coshuffle (dual coproduct) ==")
w = alphabet.word("x0.x1")
for (left, right), n in sorted(coshuffle(w).items()):
    print(f"  {fmt(w)} -> {fmt(left)} ⊗ {fmt(right)}  (multiplicity {n})")

print()
print("== duality: coefficient of w in u ⧢ v equals that of (u,v) in Δ(w) ==")
u, v = alphabet.word("x0"), alphabet.word("x0.x1")
for w, n in sorted(shuffle(u, v).items()):
    m = coshuffle(w).get((u, v), 0)
    print(f"  w = {fmt(w)}: shuffle coefficient {n}, coshuffle coefficient {m}")
