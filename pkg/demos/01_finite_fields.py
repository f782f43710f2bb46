# Exact arithmetic in small finite fields, and the character values the
# verifier is built on.  Everything here is integers and rational exponents;
# no floating point is involved anywhere.

from fractions import Fraction

from shalika.field import Field, additive_character, mult_character

# F_4 = F_2[x]/(x^2 + x + 1).  Elements are encoded 0..3 and all arithmetic
# goes through precomputed tables.
f4 = Field(2, 2)
print("F_%d, characteristic %d" % (f4.q, f4.p))
for a in range(f4.q):
    for b in range(f4.q):
        print("  %d * %d = %d" % (a, b, f4.mul_table[a][b]), end="")
    print()

# The multiplicative group is cyclic; the generator and discrete logs drive
# the multiplicative characters.
print("generator of F_4^x:", f4.generator)

# Characters take values in roots of unity, represented by their exponent
# as a Fraction in Q/Z.  psi_c(a) = exp(2 pi i Tr(c a) / p) is stored as
# the rational Tr(c a) / p.
f3 = Field(3)
print("\nadditive character of F_3 (c = 1):")
for a in range(3):
    print("  a=%d ->" % a, additive_character(f3.elem(a)))

# Multiplicative character with exponent 1 on F_3^x: value at the generator
# is a primitive (q-1)-th root of unity.
gen = f3.elem(f3.generator)
print("mult character at generator:", mult_character(gen, 1))
assert mult_character(gen, 1).exponent == Fraction(1, 2)

# Equality of character values is exact equality of reduced fractions, so
# identities like psi(a) psi(b) = psi(a + b) can be asserted, not approximated.
one, two = f3.elem(1), f3.elem(2)
lhs = additive_character(one) * additive_character(two)
rhs = additive_character(one + two)
print("psi(1) psi(2) == psi(1 + 2):", lhs == rhs)
