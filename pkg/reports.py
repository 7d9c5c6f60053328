"""
Report Writer
=============
Persists audit reports as JSON and sampled plans as CSV path traces.
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from config import SAMPLES_CSV_PATH, TIMINGS_PATH
from geometry import paths as geo_paths
from logger import get_logger
from measures.core import FiniteMeasure
from models import RunReport

logger = get_logger(__name__)

TRACE_POINTS = 17


def trace_rows(
    planner: str,
    sample: int,
    measure: FiniteMeasure,
    points: int = TRACE_POINTS,
) -> List[Dict[str, Any]]:
    """One row per (atom, t) with the path's coordinates at t."""
    rows: List[Dict[str, Any]] = []
    for atom_index, (path, weight) in enumerate(measure):
        rows.extend(
            path_rows(
                path,
                points,
                planner=planner,
                sample=sample,
                atom=atom_index,
                weight=float(weight),
            )
        )
    return rows


def path_rows(
    path: geo_paths.Path, points: int = TRACE_POINTS, **columns: Any
) -> List[Dict[str, Any]]:
    rows = []
    for t in np.linspace(0.0, 1.0, points):
        coords = path.space.coordinates(path.at(float(t)))
        row = dict(columns, t=float(t))
        row.update({f"x{i}": float(c) for i, c in enumerate(coords)})
        rows.append(row)
    return rows


class ReportWriter:
    def __init__(self, report_path: Path, timings_path: Path = TIMINGS_PATH):
        self.report_path = Path(report_path)
        self.timings_path = Path(timings_path)

    def write_report(self, run: RunReport) -> Path:
        """Write report.json with sorted keys; equal runs give equal bytes."""
        self.report_path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(run.model_dump(mode="json"), sort_keys=True, indent=2)
        self.report_path.write_text(payload + "\n", encoding="utf-8")
        logger.info(f"Report saved to {self.report_path}")
        return self.report_path

    def write_timings(self, timings: Dict[str, float]) -> Path:
        self.timings_path.parent.mkdir(parents=True, exist_ok=True)
        rounded = {key: round(value, 6) for key, value in timings.items()}
        payload = json.dumps(rounded, sort_keys=True, indent=2)
        self.timings_path.write_text(payload + "\n", encoding="utf-8")
        return self.timings_path

    def export_samples(
        self, rows: Iterable[Dict[str, Any]], output_path: Optional[Path] = None
    ) -> Optional[Path]:
        """
        Export sampled path traces to CSV for external plotting.
        """
        output_path = Path(output_path or SAMPLES_CSV_PATH)
        df = pd.DataFrame(list(rows))

        if df.empty:
            logger.warning("No samples to export.")
            return None

        # Clean column names
        df.columns = [
            str(col).strip().replace(" ", "_").replace("-", "_").lower()
            for col in df.columns
        ]

        # Coordinate columns after the identifying ones
        leading = [c for c in ("planner", "sample", "atom", "weight", "t") if c in df.columns]
        coords = sorted((c for c in df.columns if c not in leading), key=lambda c: (len(c), c))
        df = df[leading + coords]

        output_path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(output_path, index=False)
        logger.info(f"Samples saved to {output_path}")
        return output_path
