"""Print every concrete countermodel and separation, found by search.

    python scripts/reproduce_paper.py [--max-worlds N]
"""

import argparse

from stkripke.consequence import Bound, Mode, Query, check, minimal_witness
from stkripke.model import ModelKind
from stkripke.semantics import Inference, parse_metainference, parse_sequent

CLAIMS = [
    ("double negation of ~a -> (a -> b)", Mode.TARSKIAN, Inference((), (minimal_witness(),))),
    ("=> ~a -> (a -> b)", Mode.ST, parse_sequent("=> ~a -> (a -> b)")),
    ("explosion a, ~a => b", Mode.ST, parse_sequent("a, ~a => b")),
    ("conjunction introduction", Mode.META, parse_metainference("[ => a ; => b ] =>* [ => a & b ]")),
    ("explosion from bot", Mode.META, parse_metainference("[ => bot ] =>* [ => b ]")),
    ("explosion from a and ~a", Mode.META, parse_metainference("[ => a ; => ~a ] =>* [ => b ]")),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-worlds", type=int, default=3)
    args = ap.parse_args()
    bound = Bound(args.max_worlds, rooted=True)
    for title, mode, payload in CLAIMS:
        print(f"== {title}: {payload}")
        for logic in ModelKind:
            v = check(Query(logic, mode, payload, bound))
            print(f"   {logic.label:15s} {v.describe()}")
            if v.certificate is not None and logic != ModelKind.CLASSICAL:
                for line in v.certificate.to_text().splitlines():
                    print(f"      {line}")


if __name__ == "__main__":
    main()
