"""Results files: the run manifest, results JSON, per-session CSV and histograms."""

import csv
import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Optional, Sequence

import numpy as np

from guessbench.__about__ import VERSION
from guessbench.engine.experiment import ExperimentConfig, result_from_records, metric_values
from guessbench.errors import UsageError

SESSION_CSV_FIELDS = ["policy", "session_index", "rounds_played", "final_balance", "bankrupt", "capped"]
HISTOGRAM_METRICS = ("success_rate", "survival")


@dataclass(frozen=True)
class RunManifest:
    """Provenance stamped on every output file."""

    config_sha256: str
    base_seed: int
    sessions_per_policy: int
    version: str
    timestamp: str

    @classmethod
    def create(cls, config_sha256, base_seed, sessions_per_policy):
        timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        return cls(config_sha256, base_seed, sessions_per_policy, VERSION, timestamp)

    def to_config(self):
        return asdict(self)

    @classmethod
    def from_config(cls, config):
        return cls(
            config["config_sha256"],
            int(config["base_seed"]),
            int(config["sessions_per_policy"]),
            config["version"],
            config["timestamp"],
        )

    def comment_line(self):
        """The manifest as a single ``#`` line heading CSV and table outputs."""
        return "# manifest " + json.dumps(self.to_config(), sort_keys=True)


def results_document(result, manifest):
    return {
        "manifest": manifest.to_config(),
        "config": result.config.to_config(),
        "policies": [
            {
                "label": policy.label,
                "policy": policy.policy.to_config(),
                "summary": policy.summary,
                "sessions": [session.to_config() for session in policy.sessions],
            }
            for policy in result.policies
        ],
    }


def save_results(result, manifest, filepath):
    """Write the results JSON with UTF-8 encoding."""
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(results_document(result, manifest), f, indent=2)
        f.write("\n")


def load_results(filepath):
    """Read a results JSON back into an ``ExperimentResult`` and its manifest."""
    with open(filepath, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise UsageError(f"results file {filepath} is not UTF-8 text: {e}") from e
    if not text.strip():
        raise UsageError(f"results file {filepath} is empty")
    try:
        document = json.loads(text)
        manifest = RunManifest.from_config(document["manifest"])
        config = ExperimentConfig.from_config(document["config"])
        return result_from_records(config, document["policies"]), manifest
    except UsageError:
        raise
    except json.JSONDecodeError as e:
        raise UsageError(f"results file {filepath} is not valid JSON: {e}") from e
    except KeyError as e:
        raise UsageError(f"results file {filepath} is missing {e}") from e
    except (TypeError, ValueError) as e:
        raise UsageError(f"results file {filepath} is malformed: {e}") from e


def save_sessions_csv(result, manifest, filepath):
    """Write one CSV row per session."""
    with open(filepath, "w", encoding="utf-8", newline="") as f:
        f.write(manifest.comment_line() + "\n")
        writer = csv.DictWriter(f, SESSION_CSV_FIELDS)
        writer.writeheader()
        for policy in result.policies:
            for index, session in enumerate(policy.sessions):
                writer.writerow(
                    {
                        "policy": policy.label,
                        "session_index": index,
                        "rounds_played": session.rounds_played,
                        "final_balance": session.final_balance,
                        "bankrupt": session.bankrupt,
                        "capped": session.capped,
                    }
                )


@dataclass(frozen=True)
class HistogramSpec:
    metric: str
    bins: int = 20
    edges: Optional[Sequence[float]] = None
    group_by: str = "policy"

    def __post_init__(self):
        if self.metric not in HISTOGRAM_METRICS:
            raise UsageError(
                f"histogram metric must be one of {list(HISTOGRAM_METRICS)}, got {self.metric!r}"
            )
        if self.bins < 1:
            raise UsageError(f"need at least one bin, got {self.bins}")
        if self.edges is not None:
            if len(self.edges) < 2:
                raise UsageError("explicit bin edges need at least two values")
            if any(lo >= hi for lo, hi in zip(self.edges, self.edges[1:])):
                raise UsageError(f"bin edges must be strictly increasing, got {list(self.edges)}")


def histogram_rows(result, spec):
    """Plot-ready rows for every policy; the bin edges are shared across policies."""
    session_config = result.config.session
    if spec.metric == "success_rate":
        if session_config.mode != "horizon":
            raise UsageError("success_rate histograms need horizon-mode results")
        rows = []
        for policy in result.policies:
            indicators = metric_values(policy.sessions, "success", session_config)
            count = int(sum(indicators))
            rows.append(
                {
                    "group": policy.label,
                    "bin_lo": 0.0,
                    "bin_hi": 1.0,
                    "count": count,
                    "rate": count / len(indicators),
                }
            )
        return rows

    if session_config.mode != "bankruptcy":
        raise UsageError("survival histograms need bankruptcy-mode results")
    groups = [
        (policy.label, np.asarray(metric_values(policy.sessions, "survival", session_config)))
        for policy in result.policies
    ]
    if spec.edges is not None:
        edges = np.asarray(spec.edges, dtype=float)
        outside = sum(int(np.sum((v < edges[0]) | (v > edges[-1]))) for _, v in groups)
        if outside:
            raise UsageError(
                f"bin edges [{edges[0]:g}, {edges[-1]:g}] leave out {outside} session(s); "
                "widen the edges to cover every survival count"
            )
    else:
        edges = np.histogram_bin_edges(np.concatenate([v for _, v in groups]), bins=spec.bins)
    rows = []
    for label, values in groups:
        counts, _ = np.histogram(values, bins=edges)
        for lo, hi, count in zip(edges[:-1], edges[1:], counts):
            rows.append({"group": label, "bin_lo": float(lo), "bin_hi": float(hi), "count": int(count)})
    return rows


def save_histogram_csv(rows, manifest, filepath):
    fields = ["group", "bin_lo", "bin_hi", "count"]
    if rows and "rate" in rows[0]:
        fields.append("rate")
    with open(filepath, "w", encoding="utf-8", newline="") as f:
        f.write(manifest.comment_line() + "\n")
        writer = csv.DictWriter(f, fields)
        writer.writeheader()
        writer.writerows(rows)


def read_csv_rows(filepath):
    """Read a guessbench CSV, skipping its manifest comment line."""
    with open(filepath, encoding="utf-8", newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))
