"""Ingest partial actions and run the axiom checks.

A partial action assigns each group element g a domain D_g and a bijection
alpha_g from D_(g^-1) onto D_g. Restricting any global action to a window
gives one; the checker verifies two equivalent axiom systems side by side
and reports whether they agree.
"""

import json

from pargroupoid import partial_action_from_json, verify_partial_action

# Z4 translating itself, restricted to the window {0, 1}.
RESTRICTED = {
    "group": "cyclic:4",
    "X": 2,
    "domains": {"0": [0, 1], "1": [1], "2": [], "3": [0]},
    "maps": {"0": [[0, 0], [1, 1]], "1": [[0, 1]], "2": [], "3": [[1, 0]]},
}

# Same shape, but the identity's domain was shrunk: not a partial action.
BROKEN = {
    "group": "cyclic:2",
    "X": 2,
    "domains": {"0": [0], "1": [0]},
    "maps": {"0": [[0, 0]], "1": [[0, 0]]},
}


def show(doc: dict) -> None:
    print(json.dumps(doc))
    pa = partial_action_from_json(doc)
    report = verify_partial_action(pa)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        extra = ""
        if check.witness is not None:
            extra = f"  witness {check.witness}"
        elif check.note:
            extra = f"  ({check.note})"
        print(f"  {check.name}: {status}{extra}")
    print(f"  => {'PASS' if report.passed else 'FAIL'}\n")


def main() -> None:
    show(RESTRICTED)
    show(BROKEN)


if __name__ == "__main__":
    main()
