# %% [markdown]
# # Presentations of double branched covers
#
# Colour a link diagram like a checkerboard.  The black surface falls apart
# into disks joined by twisted bands.  Each band class contributes a
# generator, each white region another.  The relations read off this
# picture present the fundamental group of the double branched cover, and
# its abelianization has order equal to the determinant.

# %%
from tanglekit import brunner as br
from tanglekit import diagram as dg
from tanglekit import invariants as inv
from tanglekit import tangle as tg

d = dg.closed(tg.parse_expr("tau([-1,-2])"))
pres = br.brunner_presentation(d)
print(pres.to_text())
print("abelianization order:", br.abelianization_order(pres), " determinant:", inv.determinant(d))

# %% [markdown]
# ## A worked eleven-crossing example
#
# Four disks, seven bands in six parallel classes.

# %%
d, outer = br.bpe_diagram()
pres = br.brunner_presentation(d, outer)
print(pres.to_text())
print("match against the corrected relation list:",
      br.match_relabeling(pres, br.parse_relations(br.BPE_CORRECTED)))

# %% [markdown]
# ## The coarse presentation and a rewriting chain
#
# For the filling family the presentation is only known up to the tangle's
# own sub-graph, recorded here as inert range data.  A chain of licensed
# rewriting steps turns one relator into another.

# %%
pres = br.coarse_family_presentation("-1", 1, 1)
print(pres.to_text())
steps = br.collapse_chain(1, 1)
for s in steps:
    print(f"{str(s.source):34s} -> {str(s.target):34s} [{s.by}]")
print("...", len(steps), "steps; verdict:", br.rewrite_verify(pres, steps))
