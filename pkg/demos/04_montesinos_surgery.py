# %% [markdown]
# # Montesinos forms and the one-half filling
#
# The 1/2 filling of tau(-m) is a Montesinos link.  Its double branched
# cover is surgery on a torus knot, with coefficient of size 4(m+1).

# %%
from fractions import Fraction

from tanglekit import dehn
from tanglekit import invariants as inv
from tanglekit import montesinos as mo

m = mo.MontesinosForm(0, (Fraction(-2), Fraction(2), Fraction(3, 2)))
print(m, "reduces to", mo.reduced_form(m), " det", inv.link_det(m.expr()))

for k in range(1, 6):
    desc = dehn.prop1_description(k)
    print(f"m={k}: {desc.montesinos}  surgery on {desc.knot}, |coefficient| = "
          f"{desc.coefficient_magnitude} (sign {desc.coefficient_sign})")

# %% [markdown]
# The helper functions behind the reduced form.

# %%
for t in (Fraction(-2), Fraction(3, 2), Fraction(-5, 3)):
    print(t, " floor", mo.floor(t), " frac", mo.frac(t), " hat", mo.hat(t), " flip", mo.flipf(t))
