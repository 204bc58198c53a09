# repo root on sys.path so `tests.mini` imports regardless of how pytest is invoked
import sys
from pathlib import Path

root = str(Path(__file__).resolve().parent.parent)
if root not in sys.path:
    sys.path.insert(0, root)
