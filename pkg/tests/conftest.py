from hypothesis import strategies as st

from stkripke.formula import BOT, And, Atom, Implies, Or
from stkripke.model import ModelKind, from_masks, leaves_for, preorders, upsets

NAMES = ["a", "b", "c"]

leaf = st.one_of(st.sampled_from([Atom(n) for n in NAMES]), st.just(BOT))


def formulas(max_leaves: int = 12):
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
            st.builds(lambda f: Implies(f, BOT), sub),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def models(draw, kinds=tuple(ModelKind), max_worlds: int = 3, names=("a", "b")):
    kind = draw(st.sampled_from(kinds))
    n = 1 if kind == ModelKind.CLASSICAL else draw(st.integers(1, max_worlds))
    up = draw(st.sampled_from(preorders(n)))
    leaves = leaves_for(kind, list(names))
    masks = [draw(st.sampled_from(upsets(up))) for _ in leaves]
    return from_masks(up, leaves, masks, kind)
