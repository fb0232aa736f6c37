"""Monte Carlo trial harness.

Every trial draws its instance and its algorithm randomness from seeds
derived from (base seed, trial index), so the CSV is a pure function of the
configuration. Each returned coloring is re-validated against the instance
here; the algorithm's own verdict is not trusted.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import fmean

from .certified import certified_stream_color
from .core import Hyperedge, ParameterDomainError, validate_coloring
from .local_lemma import local_intersection_threshold, local_stream_color
from .recolor import p_default, stream_color
from .sparse_vertex import k_balanced_stream_color
from .stream_io import gen_bounded_intersection, gen_erdos, gen_uniform_random, read_stream
from .tape import RandomTape, derive_seed

ALGORITHMS = ("delayed", "certified", "balanced", "kbalanced", "local")
KINDS = ("uniform", "erdos", "local")
# algorithms that must never hand back an invalid coloring
SOUND = frozenset({"certified", "balanced", "kbalanced", "local"})
SCHEMA_LINE = "# hgstream-bench schema=1"
COLUMNS = ("row", "trial", "algorithm", "n", "v", "q", "p", "t", "k", "seed", "outcome",
           "flips", "blue_size", "red_size", "passes", "peak_state", "attempts",
           "success_rate", "mean_residual", "mean_passes")

_INSTANCE_KEY = 1
_ALGO_KEY = 2


class SoundnessViolation(AssertionError):
    """A colorer that certifies its output returned an invalid coloring."""


@dataclass
class BenchConfig:
    algorithm: str
    trials: int = 1
    seed: int = 0
    kind: str = "uniform"
    n: int | None = None
    v: int | None = None
    q: int | None = None
    t: float | None = None
    k: int = 2
    p: float | None = None
    cap: float | None = None
    epsilon: float = 0.02
    max_intersections: int | None = None
    max_passes: int | None = None
    attempts: int = 1
    input: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ParameterDomainError(f"unknown algorithm {self.algorithm!r}")
        if self.kind not in KINDS:
            raise ParameterDomainError(f"unknown instance kind {self.kind!r}")
        if self.trials < 1:
            raise ParameterDomainError("trials must be >= 1")
        if self.attempts < 1:
            raise ParameterDomainError("attempts must be >= 1")


@dataclass
class TrialRecord:
    trial: int
    algorithm: str
    n: int
    v: int
    q: int
    seed: int
    outcome: str
    p: float | None = None
    t: float | None = None
    k: int | None = None
    flips: int | None = None
    blue_size: int | None = None
    red_size: int | None = None
    passes: int | None = None
    peak_state: int | None = None
    attempts: int = 1
    wall_ms: float = field(default=0.0, compare=False)

    @property
    def success(self) -> bool:
        return self.outcome == "valid"


def attempts_for_delta(delta: float) -> int:
    """Independent repetitions that push a 1/2 failure rate below ``delta``."""
    if not 0.0 < delta < 1.0:
        raise ParameterDomainError(f"delta must lie in (0, 1), got {delta}")
    return max(1, math.ceil(math.log2(1.0 / delta)))


def build_instance(cfg: BenchConfig, trial: int) -> tuple[list[Hyperedge], int, int]:
    """Edges, universe size and uniformity for one trial."""
    if cfg.input is not None:
        header, edges = read_stream(cfg.input)
        v = header.v if header.v is not None else max((max(e) for e in edges), default=0)
        return edges, v, header.n
    if cfg.n is None:
        raise ParameterDomainError("instance needs n")
    iseed = derive_seed(cfg.seed, trial, _INSTANCE_KEY)
    if cfg.kind == "erdos":
        if cfg.t is None:
            raise ParameterDomainError("erdos instances need t")
        edges, big_n, _ = gen_erdos(cfg.n, cfg.t, iseed)
        return edges, big_n, cfg.n
    if cfg.v is None or cfg.q is None:
        raise ParameterDomainError(f"{cfg.kind} instances need v and q")
    if cfg.kind == "local":
        limit = cfg.max_intersections
        if limit is None:
            limit = math.floor(local_intersection_threshold(cfg.n, cfg.epsilon))
        return gen_bounded_intersection(cfg.v, cfg.n, limit, cfg.q, iseed), cfg.v, cfg.n
    return gen_uniform_random(cfg.v, cfg.n, cfg.q, iseed), cfg.v, cfg.n


def _run_once(cfg: BenchConfig, edges, v: int, n: int, aseed: int):
    """Run the configured algorithm; return (coloring or None, failure reason, fields)."""
    a = cfg.algorithm
    if a == "delayed":
        p = cfg.p if cfg.p is not None else p_default(n)
        coloring, stats = stream_color(edges, RandomTape(aseed), p, n)
        return coloring, None, {"p": p, "flips": stats.flips, "peak_state": stats.peak_state}
    if a == "certified":
        p = cfg.p if cfg.p is not None else p_default(n)
        out = certified_stream_color(edges, RandomTape(aseed), p, cfg.cap, n)
        s = out.stats
        fields = {"p": p, "flips": s.flips, "blue_size": s.blue_size, "red_size": s.red_size,
                  "peak_state": s.peak_state + s.extra_state}
    elif a in ("balanced", "kbalanced"):
        k = 2 if a == "balanced" else cfg.k
        out = k_balanced_stream_color(edges, v, n, k, aseed)
        fields = {"k": k, "peak_state": v}
    else:
        out = local_stream_color(edges, aseed, cfg.max_passes)
        fields = {"passes": out.stats.passes, "peak_state": out.stats.discovered}
    reason = None if out.ok else str(out.failure.reason)
    return out.coloring, reason, fields


def run_trial(cfg: BenchConfig, trial: int) -> TrialRecord:
    edges, v, n = build_instance(cfg, trial)
    base = derive_seed(cfg.seed, trial, _ALGO_KEY)
    start = time.perf_counter()
    attempts = cfg.attempts if cfg.algorithm in SOUND else 1
    for attempt in range(attempts):
        aseed = base if attempt == 0 else derive_seed(base, attempt)
        coloring, reason, fields = _run_once(cfg, edges, v, n, aseed)
        if coloring is not None:
            break
    wall = (time.perf_counter() - start) * 1000.0
    if coloring is not None:
        bad = validate_coloring(edges, coloring)
        outcome = "invalid" if bad else "valid"
        if bad and cfg.algorithm in SOUND:
            raise SoundnessViolation(
                f"{cfg.algorithm} returned a coloring with {len(bad)} monochromatic edges "
                f"(trial {trial}, seed {aseed})")
    else:
        outcome = reason
    return TrialRecord(trial=trial, algorithm=cfg.algorithm, n=n, v=v, q=len(edges), seed=aseed,
                       outcome=outcome, t=cfg.t, attempts=attempt + 1, wall_ms=wall, **fields)


def run_bench(cfg: BenchConfig, workers: int = 1) -> list[TrialRecord]:
    """All trial records in trial-index order."""
    if workers <= 1:
        return [run_trial(cfg, i) for i in range(cfg.trials)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_trial, [cfg] * cfg.trials, range(cfg.trials)))


def summarize(records: list[TrialRecord]) -> dict:
    residual = [r.blue_size + r.red_size for r in records if r.blue_size is not None]
    passes = [r.passes for r in records if r.passes is not None]
    return {
        "trials": len(records),
        "success_rate": sum(r.success for r in records) / len(records),
        "invalid": sum(r.outcome == "invalid" for r in records),
        "mean_residual": fmean(residual) if residual else None,
        "mean_passes": fmean(passes) if passes else None,
    }


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def to_csv(records: list[TrialRecord], timing: bool = False) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n")
    w = csv.writer(buf, lineterminator="\n")
    cols = COLUMNS + (("wall_ms",) if timing else ())
    w.writerow(cols)
    for r in records:
        row = ["trial", r.trial, r.algorithm, r.n, r.v, r.q, r.p, r.t, r.k, r.seed, r.outcome,
               r.flips, r.blue_size, r.red_size, r.passes, r.peak_state, r.attempts, None, None, None]
        if timing:
            row.append(round(r.wall_ms, 3))
        w.writerow([_fmt(x) for x in row])
    s = summarize(records)
    first = records[0]
    row = ["summary", s["trials"], first.algorithm, first.n, first.v, None, first.p, first.t,
           first.k, None, None, None, None, None, None, None, None,
           s["success_rate"], s["mean_residual"], s["mean_passes"]]
    if timing:
        row.append(round(sum(r.wall_ms for r in records), 3))
    w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict[str, str]]:
    """Rows of a bench CSV as dicts (schema comment line skipped)."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))
