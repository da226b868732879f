"""Task runner for independent work units (one per prime power in a scan)."""

import logging
from multiprocessing import Pool
from multiprocessing import TimeoutError as PoolTimeoutError
from typing import Any, Callable, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


class TaskRunner:
    """Utility for running work units serially or on a process pool."""

    def __init__(self, max_workers: int = 1, timeout: Optional[float] = None):
        """Initialize task runner.

        Args:
            max_workers: Process count; 1 runs every unit in this process.
            timeout: Seconds to wait for each unit (pool mode only). Workers still busy
                after a timeout are terminated when the batch ends.
        """
        self.max_workers = max(1, max_workers)
        self.timeout = timeout

    def run(self, func: Callable[..., Any], args: Sequence[Any]) -> Dict[str, Any]:
        """Run one unit in this process.

        Returns:
            Dictionary with result, error, and success status.
        """
        try:
            return {"result": func(*args), "error": "", "success": True}
        except Exception as e:
            logger.warning(f"Work unit {func.__name__}{tuple(args)} failed: {e}")
            return {"result": None, "error": str(e), "success": False}

    def run_all(self, func: Callable[..., Any], units: Sequence[Sequence[Any]]) -> List[Dict[str, Any]]:
        """Run every unit; results come back in input order regardless of completion order.

        Args:
            func: Module-level callable (it must pickle in pool mode).
            units: Argument tuples, one per unit.

        Returns:
            One result dictionary per unit.
        """
        if self.max_workers == 1 or len(units) <= 1:
            return [self.run(func, args) for args in units]

        logger.info(f"Running {len(units)} units on {self.max_workers} processes")
        outputs: List[Dict[str, Any]] = []
        timed_out = False
        pool = Pool(processes=self.max_workers)
        try:
            pending = [pool.apply_async(func, tuple(args)) for args in units]
            for args, handle in zip(units, pending):
                try:
                    outputs.append({"result": handle.get(timeout=self.timeout), "error": "", "success": True})
                except PoolTimeoutError:
                    logger.error(f"Work unit {tuple(args)} timed out after {self.timeout} seconds")
                    timed_out = True
                    outputs.append(
                        {
                            "result": None,
                            "error": f"timed out after {self.timeout} seconds",
                            "success": False,
                        }
                    )
                except Exception as e:
                    logger.warning(f"Work unit {tuple(args)} failed: {e}")
                    outputs.append({"result": None, "error": str(e), "success": False})
        finally:
            if timed_out or len(outputs) < len(units):
                pool.terminate()
            else:
                pool.close()
            pool.join()
        return outputs
