"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from lambda_epsilon.syntax import ZERO, App, DApp, Eps, Sum, Var, lam


def term_strategy(names=("x", "y", "z"), max_leaves=6):
    """Raw terms whose free variables come from `names`."""
    leaves = st.sampled_from([Var(n) for n in names] + [ZERO])

    def extend(children):
        return st.one_of(
            st.builds(App, children, children),
            st.builds(DApp, children, children),
            st.builds(Sum, children, children),
            st.builds(Eps, children),
            st.builds(lam, st.sampled_from(("x", "y", "z")), children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


terms = term_strategy()
