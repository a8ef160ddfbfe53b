"""Batch experiment harness: seeded sweeps, paired runs, CSV output.

Every election run gets a seed derived deterministically from the config's
base seed and the run's coordinates, and each manipulative run shares its
seed with a truthful twin so that any change in the final winner is
attributable to manipulation alone.  Records are sorted by their coordinates
before writing, so the CSV bytes do not depend on worker scheduling.
"""

from __future__ import annotations

import csv
import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable, Sequence

from .center import Policy, run_election
from .preflib import Dataset, load_soc, sample_profiles
from .voter import BEHAVIORS, MANIPULATIVE, TRUTHFUL

POLICY_CODES = {
    "es": ("es", False),
    "random": ("random", False),
    "careful-es": ("es", True),
    "careful-random": ("random", True),
}

RECORDS_HEADER = (
    "dataset,policy,careful,behavior,n_voters,set_index,rep_index,"
    "queries_issued,max_queries,manipulated_count,winner,"
    "paired_truthful_winner,outcome_changed"
)


def default_voter_counts() -> list[int]:
    """The small and large grids used in the reference experiments."""
    return list(range(4, 21)) + list(range(30, 101, 10))


@dataclass
class ExperimentConfig:
    dataset: str
    voter_counts: list[int] = field(default_factory=default_voter_counts)
    policies: list[tuple[str, bool]] = field(
        default_factory=lambda: list(POLICY_CODES.values())
    )
    behaviors: list[str] = field(default_factory=lambda: list(BEHAVIORS))
    profile_sets: int = 20
    reps_per_set: int = 40
    base_seed: int = 0
    output: str = "."
    workers: int = 1

    def __post_init__(self):
        if self.profile_sets < 1 or self.reps_per_set < 1:
            raise ValueError("profile_sets and reps_per_set must be >= 1")
        if any(n < 1 for n in self.voter_counts):
            raise ValueError("voter counts must be >= 1")
        for b in self.behaviors:
            if b not in BEHAVIORS:
                raise ValueError(f"unknown behavior {b!r}")


@dataclass(frozen=True)
class RunRecord:
    """One election run, flattened to a CSV row."""

    dataset: str
    policy: str
    careful: bool
    behavior: str
    n_voters: int
    set_index: int
    rep_index: int
    queries_issued: int
    max_queries: int
    manipulated_count: int
    winner: int
    paired_truthful_winner: int
    outcome_changed: bool

    def sort_key(self):
        return (
            self.dataset,
            self.policy,
            self.careful,
            self.behavior,
            self.n_voters,
            self.set_index,
            self.rep_index,
        )


@dataclass(frozen=True)
class SummaryRow:
    dataset: str
    policy: str
    careful: bool
    behavior: str
    n_voters: int
    runs: int
    mean_manipulation_ratio: float
    mean_outcome_changed: float
    mean_fraction_queried: float


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from arbitrary coordinates (hash-based, version-proof)."""
    key = "|".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def parse_config(text: str) -> ExperimentConfig:
    """Parse a flat ``key = value`` config; lists are comma-separated."""
    raw: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {line_no}: expected 'key = value'")
        raw[key.strip()] = value.strip()

    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "dataset" not in raw:
        raise ValueError("config is missing required key 'dataset'")

    kwargs: dict = {"dataset": raw["dataset"]}
    if "voter_counts" in raw:
        kwargs["voter_counts"] = [int(tok) for tok in raw["voter_counts"].split(",")]
    if "policies" in raw:
        policies = []
        for tok in raw["policies"].split(","):
            tok = tok.strip().lower()
            if tok not in POLICY_CODES:
                raise ValueError(f"unknown policy {tok!r} (use {sorted(POLICY_CODES)})")
            policies.append(POLICY_CODES[tok])
        kwargs["policies"] = policies
    if "behaviors" in raw:
        kwargs["behaviors"] = [tok.strip().lower() for tok in raw["behaviors"].split(",")]
    for key in ("profile_sets", "reps_per_set", "base_seed", "workers"):
        if key in raw:
            kwargs[key] = int(raw[key])
    if "output" in raw:
        kwargs["output"] = raw["output"]
    return ExperimentConfig(**kwargs)


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def policy_code(selector: str, careful: bool) -> str:
    return ("careful-" if careful else "") + selector


def _run_profile_set(cfg: ExperimentConfig, ds: Dataset, n: int, set_index: int) -> list[RunRecord]:
    """All runs that share one sampled voter profile set."""
    profiles = sample_profiles(
        ds, n, random.Random(derive_seed(cfg.base_seed, "profiles", n, set_index))
    )
    records = []
    for rep in range(cfg.reps_per_set):
        for selector, careful in cfg.policies:
            policy = Policy(selector, careful)
            seed = derive_seed(cfg.base_seed, "run", n, set_index, rep, selector, careful)
            # the truthful twin always runs: it anchors outcome_changed
            truthful = run_election(profiles, TRUTHFUL, policy, random.Random(seed))
            results = {TRUTHFUL: truthful}
            if MANIPULATIVE in cfg.behaviors:
                results[MANIPULATIVE] = run_election(
                    profiles, MANIPULATIVE, policy, random.Random(seed)
                )
            for behavior in cfg.behaviors:
                res = results[behavior]
                records.append(
                    RunRecord(
                        dataset=ds.name,
                        policy=selector,
                        careful=careful,
                        behavior=behavior,
                        n_voters=n,
                        set_index=set_index,
                        rep_index=rep,
                        queries_issued=res.queries_issued,
                        max_queries=res.max_queries,
                        manipulated_count=res.manipulated_count,
                        winner=res.winner,
                        paired_truthful_winner=truthful.winner,
                        outcome_changed=res.winner != truthful.winner,
                    )
                )
    return records


def run_experiment(cfg: ExperimentConfig, ds: Dataset | None = None) -> list[RunRecord]:
    """Execute the full sweep; the result is independent of worker count."""
    if ds is None:
        ds = load_soc(cfg.dataset)
    cells = [(n, s) for n in cfg.voter_counts for s in range(cfg.profile_sets)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = pool.map(
                _run_profile_set,
                [cfg] * len(cells),
                [ds] * len(cells),
                [n for n, _ in cells],
                [s for _, s in cells],
            )
            records = [rec for chunk in chunks for rec in chunk]
    else:
        records = [
            rec for n, s in cells for rec in _run_profile_set(cfg, ds, n, s)
        ]
    records.sort(key=RunRecord.sort_key)
    return records


def summarize(records: Sequence[RunRecord]) -> list[SummaryRow]:
    """Per (dataset, policy, careful, behavior, n_voters) means of the three measures."""
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        key = (rec.dataset, rec.policy, rec.careful, rec.behavior, rec.n_voters)
        groups.setdefault(key, []).append(rec)
    rows = []
    for key in sorted(groups):
        recs = groups[key]
        k = len(recs)
        rows.append(
            SummaryRow(
                dataset=key[0],
                policy=key[1],
                careful=key[2],
                behavior=key[3],
                n_voters=key[4],
                runs=k,
                mean_manipulation_ratio=sum(
                    r.manipulated_count / r.queries_issued for r in recs
                )
                / k,
                mean_outcome_changed=sum(r.outcome_changed for r in recs) / k,
                mean_fraction_queried=sum(
                    r.queries_issued / r.max_queries for r in recs
                )
                / k,
            )
        )
    return rows


def _bool(value: bool) -> str:
    return "true" if value else "false"


def write_records_csv(records: Iterable[RunRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORDS_HEADER.split(","))
        for r in records:
            writer.writerow(
                [
                    r.dataset,
                    r.policy,
                    _bool(r.careful),
                    r.behavior,
                    r.n_voters,
                    r.set_index,
                    r.rep_index,
                    r.queries_issued,
                    r.max_queries,
                    r.manipulated_count,
                    r.winner,
                    r.paired_truthful_winner,
                    _bool(r.outcome_changed),
                ]
            )


def write_summary_csv(rows: Iterable[SummaryRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "dataset",
                "policy",
                "careful",
                "behavior",
                "n_voters",
                "runs",
                "mean_manipulation_ratio",
                "mean_outcome_changed",
                "mean_fraction_queried",
            ]
        )
        for r in rows:
            writer.writerow(
                [
                    r.dataset,
                    r.policy,
                    _bool(r.careful),
                    r.behavior,
                    r.n_voters,
                    r.runs,
                    f"{r.mean_manipulation_ratio:.6f}",
                    f"{r.mean_outcome_changed:.6f}",
                    f"{r.mean_fraction_queried:.6f}",
                ]
            )
