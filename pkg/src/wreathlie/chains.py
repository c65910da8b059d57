"""Normalizer chain in W_n, idealizer chain in L_n, and partition counts.

Both chains start from the canonical regular subgroup T = <D_1, ..., D_n>
(resp. its Lie counterpart span{d_1, ..., d_n}) at step -1. Step i >= 0 is
the normalizer (idealizer) of step i-1. For 1 <= i <= n-1 the relative index
log_p |N_i : N_(i-1)| is expected to be q_(p, i+1), the number of partitions
of 2..i+1 into at least two parts, no part repeated p or more times.
"""

import csv
import io
import json
from dataclasses import dataclass, field

from .liealg import HomogeneousSubring, idealizer, regular_subring, subring_image
from .structure import SaturatedSubgroup, monomial_commutator


def bounded_partitions(total, max_mult, largest=None):
    """Partitions of ``total`` (non-increasing tuples) in which no part
    occurs more than ``max_mult`` times."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for mult in range(1, max_mult + 1):
            rest = total - part * mult
            if rest < 0:
                break
            for tail in bounded_partitions(rest, max_mult, part - 1):
                yield (part,) * mult + tail


def count_partitions(p, i):
    """t_(p,i): partitions of i into at least two parts, multiplicities <= p-1."""
    if i < 1:
        raise ValueError("i must be positive")
    return sum(1 for lam in bounded_partitions(i, p - 1) if len(lam) >= 2)


def count_bounded_partitions(p, i):
    """All partitions of i with multiplicities <= p-1, from the product of
    (1 + x^k + ... + x^((p-1)k)) over k >= 1."""
    coeffs = [1] + [0] * i
    for k in range(1, i + 1):
        new = [0] * (i + 1)
        for s, c in enumerate(coeffs):
            if not c:
                continue
            for m in range(p):
                if s + m * k > i:
                    break
                new[s + m * k] += c
        coeffs = new
    return coeffs[i]


@dataclass
class PartitionTable:
    p: int
    t: dict = field(default_factory=dict)
    q: dict = field(default_factory=dict)


def q_table(p, up_to):
    if up_to < 1:
        raise ValueError("up_to must be positive")
    table = PartitionTable(p)
    running = 0
    for i in range(1, up_to + 1):
        table.t[i] = count_partitions(p, i)
        running += table.t[i]
        table.q[i] = running
    return table


def normalizer(s):
    """N_(W_n)(S) for saturated S: basis monomials g with [g, s] in S for
    every basis monomial s of S."""
    params = s.params
    keys = [
        g
        for g in params.basis_keys()
        if all(s.contains_layer_poly(*monomial_commutator(params, g, b)) for b in s.basis)
    ]
    return SaturatedSubgroup(params, keys, check=False)


def regular_subgroup(params):
    """T = <D_1, ..., D_n> as a saturated subgroup."""
    return SaturatedSubgroup(params, [(k, 0) for k in range(1, params.n + 1)], check=False)


@dataclass
class ChainStep:
    i: int
    basis: int
    logp_index: int
    predicted: int | None


@dataclass
class ChainReport:
    p: int
    n: int
    kind: str
    steps: list = field(default_factory=list)
    terms: list = field(default_factory=list, repr=False)
    start: object = field(default=None, repr=False)

    def mismatches(self):
        return [s for s in self.steps if s.predicted is not None and s.predicted != s.logp_index]

    @property
    def ok(self):
        return not self.mismatches()

    def as_dict(self):
        return {
            "p": self.p,
            "n": self.n,
            "kind": self.kind,
            "steps": [
                {"i": s.i, "basis": s.basis, "logp_index": s.logp_index, "predicted": s.predicted}
                for s in self.steps
            ],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=False)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "n", "kind", "i", "basis", "logp_index", "predicted"])
        for s in self.steps:
            w.writerow([self.p, self.n, self.kind, s.i, s.basis, s.logp_index,
                        "" if s.predicted is None else s.predicted])
        return buf.getvalue()


def _run_chain(params, kind, start, step, up_to, predict):
    limit = params.top if up_to is None else min(up_to, params.top)
    q = q_table(params.p, params.n).q if predict else {}
    report = ChainReport(params.p, params.n, kind, start=start)
    prev = start
    for i in range(limit + 1):
        cur = step(prev)
        predicted = q.get(i + 1) if 1 <= i <= params.n - 1 else None
        report.steps.append(ChainStep(i, len(cur.basis), len(cur.basis) - len(prev.basis), predicted))
        report.terms.append(cur)
        if cur == prev:
            break
        prev = cur
    return report


def normalizer_chain(params, up_to=None, start=None):
    """N_0, N_1, ... from N_(-1) = T (or ``start``), until it stabilizes,
    ``up_to`` steps have run, or step p^(n-1) is reached. Predicted indices
    are attached only for the chain starting at T."""
    predict = start is None
    start = regular_subgroup(params) if start is None else start
    return _run_chain(params, "normalizer", start, normalizer, up_to, predict)


def idealizer_chain(params, up_to=None, start=None):
    predict = start is None
    start = regular_subring(params) if start is None else start
    return _run_chain(params, "idealizer", start, idealizer, up_to, predict)


@dataclass
class CrossValidation:
    group: ChainReport
    lie: ChainReport
    diffs: list

    @property
    def agree(self):
        return not self.diffs

    def as_dict(self):
        return {
            "p": self.group.p,
            "n": self.group.n,
            "kind": "both",
            "agree": self.agree,
            "diffs": self.diffs,
            "reports": [self.group.as_dict(), self.lie.as_dict()],
        }


def cross_validate(params, steps=None, start=None):
    """Run both chains and compare them step by step: equal relative indices
    and (N_i)^phi = idealizer step i, basis for basis."""
    group = normalizer_chain(params, steps, start)
    lie_start = None if start is None else subring_image(start)
    lie = idealizer_chain(params, steps, lie_start)
    diffs = []
    if len(group.steps) != len(lie.steps):
        diffs.append(f"chain lengths differ: {len(group.steps)} vs {len(lie.steps)}")
    for gs, ls, gt, lt in zip(group.steps, lie.steps, group.terms, lie.terms):
        if gs.logp_index != ls.logp_index:
            diffs.append(f"step {gs.i}: log_p index {gs.logp_index} vs dimension step {ls.logp_index}")
        image = subring_image(gt)
        if image != lt:
            only_g = sorted(image.basis - lt.basis)
            only_l = sorted(lt.basis - image.basis)
            diffs.append(f"step {gs.i}: N^phi minus idealizer {only_g}, idealizer minus N^phi {only_l}")
    return CrossValidation(group, lie, diffs)


def read_bfile(text):
    """OEIS b-file: ``index value`` per line, ``#`` starts a comment."""
    out = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) < 2:
            raise ValueError(f"malformed b-file line: {ln!r}")
        out[int(parts[0])] = int(parts[1])
    return out


def compare_bfile(p, values, max_shift=3):
    """Report which of t_(p,i), q_(p,i) (and the unrestricted-minus-one count)
    agree with ``values`` under index shifts; no alignment is assumed."""
    if not values:
        return {"p": p, "checked": 0, "matches": []}
    top = max(values) + max_shift + 1
    table = q_table(p, max(top, 1))
    seqs = {
        "t": table.t,
        "q": table.q,
        "bounded": {i: count_bounded_partitions(p, i) for i in range(0, top + 1)},
    }
    matches = []
    for name, seq in seqs.items():
        for shift in range(-max_shift, max_shift + 1):
            common = [i for i in values if (i + shift) in seq]
            if len(common) >= 3 and all(values[i] == seq[i + shift] for i in common):
                matches.append({"sequence": name, "shift": shift, "terms": len(common)})
    return {"p": p, "checked": len(values), "matches": matches}


__all__ = [
    "ChainReport",
    "ChainStep",
    "CrossValidation",
    "HomogeneousSubring",
    "PartitionTable",
    "bounded_partitions",
    "compare_bfile",
    "count_bounded_partitions",
    "count_partitions",
    "cross_validate",
    "idealizer_chain",
    "normalizer",
    "normalizer_chain",
    "q_table",
    "read_bfile",
    "regular_subgroup",
]
