# %% [markdown]
# # Encircled tangles and their filling family
#
# Surround a type-2 alternating tangle T by a loop so that the result still
# alternates.  Both closures of the new tangle tau(T) then have the same
# determinant, 4(N_T + D_T).  Filling with the rational tangle -p/(p+q)
# gives a link whose double branched cover is the p/(p+q) Dehn filling.

# %%
from tanglekit import dehn
from tanglekit import diagram as dg
from tanglekit import invariants as inv
from tanglekit import quasialt as qa
from tanglekit import tangle as tg

T = tg.parse_expr("[-1,-2]")
print("T =", T, " (N_T, D_T) =", inv.det_pair(T))
print(inv.verify_encirclement_identity(T))

# %% [markdown]
# ## Determinants along the family
#
# The family determinant grows linearly in q.

# %%
for p, q in [(1, 1), (1, 2), (2, 3), (3, 5), (1, 4)]:
    link = inv.family_link(T, p, q)
    print(f"p/q = {p}/{q}: {tg.to_text(link):32s} det {inv.family_det(T, p, q)}")

# %% [markdown]
# ## Quasi-alternating certificates
#
# A certificate is a tree of smoothings whose determinants add up.  It can be
# checked again from scratch, or saved as JSON and checked elsewhere.

# %%
cert = qa.certify_family(T, 2, 3)
print("leaf kind:", cert.kind, " det:", cert.det)
print("base triple (det D, det D_0, det D_inf):", cert.parent.inf.det)
print("violations:", qa.check_certificate(cert))

# %% [markdown]
# ## A full report
#
# Each verdict lists the hypotheses it was derived from.

# %%
report = dehn.family_report(dg.build_Tn(1, dg.ODD), 2, 3)
for name in ("l_space", "non_left_orderable", "hyperbolic_branch_link", "non_seifert"):
    v = getattr(report, name)
    print(f"{name:24s} {v.status:18s} {v.hypotheses}")
