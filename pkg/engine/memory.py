import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import logging

from engine.schemas import VerificationReport

logger = logging.getLogger(__name__)
HISTORY_FILE = Path("memory/verification_history.json")


def _ensure_history_file(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if not path.exists():
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"reports": []}, f, indent=2)


def log_report(report: VerificationReport, path: Optional[Union[str, Path]] = None) -> None:
    path = Path(path) if path is not None else HISTORY_FILE
    _ensure_history_file(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        data.setdefault("reports", []).append(report.model_dump(mode="json"))
        temp_file = path.with_suffix(".tmp")
        with open(temp_file, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2)
        temp_file.replace(path)
        logger.info(f"Logged report with {report.total_violations} violations to {path}")
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to log report: {e}")
        raise


def get_reports(path: Optional[Union[str, Path]] = None) -> List[Dict[str, Any]]:
    path = Path(path) if path is not None else HISTORY_FILE
    _ensure_history_file(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return data.get("reports", [])
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to read reports: {e}")
        return []
