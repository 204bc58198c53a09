from evidesk.service.storage import RunRecord, RunStore
from evidesk.service.workspace import Workspace

__all__ = ["RunRecord", "RunStore", "Workspace"]
