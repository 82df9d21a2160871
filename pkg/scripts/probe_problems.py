"""Run every finite probe over the corpus and report candidates and replay status."""

import argparse
import json
import sys
from pathlib import Path

from cosetlab import conjectures as cj
from cosetlab.config import Caps
from cosetlab.coset_monoid import coset_monoid_of
from cosetlab.group_core import preset
from cosetlab.verify import DEFAULT_CORPUS

REPLAY = {"1": cj.replay_problem1, "3": cj.replay_problem3, "4a": cj.replay_problem4a, "6": cj.replay_problem6}


def probes(S, caps, k):
    lengths = cj.FilterLengths(S)
    yield "1", cj.probe_problem1(S, lengths)
    yield "3", cj.probe_problem3(S, k, caps, lengths)
    yield "4a", cj.probe_problem4a(S, lengths)
    yield "6", cj.probe_problem6(S, lengths=lengths)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="probes.json")
    ap.add_argument("--k", type=int, choices=[5, 7], default=7)
    ap.add_argument("groups", nargs="*")
    args = ap.parse_args()
    caps = Caps()

    report, replay_failures = [], 0
    fourA = []
    for name in args.groups or DEFAULT_CORPUS:
        S = coset_monoid_of(preset(name)).monoid
        for key, res in probes(S, caps, args.k):
            replayed = all(REPLAY[key](S, w) for w in res.witnesses)
            replay_failures += not replayed
            if key == "4a":
                fourA.append(res)
            state = res.skipped or f"{res.instances} instances, {len(res.candidates)} candidates"
            print(f"{name:>10}  problem {key:<3} {state}{'' if replayed else '  REPLAY FAILED'}")
            report.append({"group": name, "replayed": replayed,
                           **{k: v for k, v in res.as_dict().items() if k != "witnesses"}})
    print(f"empirical k for problem 4a: {cj.empirical_k(fourA)}")
    Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return 1 if replay_failures else 0


if __name__ == "__main__":
    sys.exit(main())
