"""Run record model written by the CLI"""

from datetime import datetime, timezone
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from src import __version__


class RunRecord(BaseModel):
    """One CLI invocation: what was asked, what came back, and how to reproduce it"""

    command: str
    params: Dict[str, Any] = Field(default_factory=dict)
    result: Any = None
    seed: Optional[int] = None
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    version: str = __version__
    diagnostics: Dict[str, Any] = Field(default_factory=dict)

    def payload(self) -> Dict[str, Any]:
        """Fields that must be identical across reruns with the same argv"""
        data = self.model_dump(mode='json', exclude={'timestamp', 'diagnostics'})
        result = data.get('result')
        if isinstance(result, dict):
            result.pop('wall_seconds', None)
        return data
