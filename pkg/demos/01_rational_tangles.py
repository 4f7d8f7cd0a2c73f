# %% [markdown]
# # Rational tangles and their closures
#
# A rational tangle is named by a continued fraction.  Its two closures are
# links whose determinants can be read straight off the fraction.  This demo
# walks through the expression grammar, the diagrams it produces, and the
# Goeritz determinant.

# %%
from tanglekit import diagram as dg
from tanglekit import invariants as inv
from tanglekit import tangle as tg

# %% [markdown]
# ## Expressions and fractions

# %%
t = tg.parse_expr("[2,3,4]")
print(t, "has fraction", tg.fraction_of(t))
print("canonical expansion of 30/13:", tg.to_continued_fraction(tg.TangleFraction(30, 13)))
print("1/t :", tg.fraction_of(tg.Invert(t)))
print("t + 1 :", tg.fraction_of(t + 1))
print("[1,2] + [1,2] :", tg.fraction_of(tg.parse_expr("[1,2] + [1,2]")))

# %% [markdown]
# ## Diagrams
#
# Diagrams are rotation systems: each crossing lists four edge labels
# counterclockwise, starting at an under-strand port.

# %%
d = dg.synthesize(t)
print(d.ascii())
print("alternating:", d.is_alternating(), " type:", dg.classify_type(d))

# %% [markdown]
# ## Determinants
#
# The numerator closure has determinant |p| and the denominator closure |q|.

# %%
print("det N([2,3,4]) =", inv.link_det(t, "N"))
print("det D([2,3,4]) =", inv.link_det(t, "D"))

for k in range(2, 7):
    link = dg.closed(tg.ContinuedFraction((0, k)), "D")
    print(f"D(1/{k}): {link.crossing_count} crossings, det {inv.determinant(link)}, "
          f"{link.components()} component(s)")

# %% [markdown]
# The Goeritz matrix behind a determinant can be inspected directly.

# %%
g = inv.goeritz(dg.closed(tg.parse_expr("[0,3]"), "D"), swap_colors=True)
print(g.tolist(), "->", inv.bareiss_det(g.matrix))
