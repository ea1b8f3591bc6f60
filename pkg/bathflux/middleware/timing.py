import time
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator

logger = logging.getLogger(__name__)


@contextmanager
def timed(operation: str, **context: Any) -> Iterator[Dict[str, Any]]:
    """Medir el tiempo de una operación de la CLI y registrarlo de forma estructurada"""
    start_time = time.perf_counter()
    record: Dict[str, Any] = {"operation": operation, **context}

    try:
        yield record
        process_time = time.perf_counter() - start_time
        record["process_time"] = process_time

        # Logging estructurado
        logger.info(
            "Operation completed",
            extra={**record, "process_time": f"{process_time:.4f}s"}
        )

    except Exception as e:
        process_time = time.perf_counter() - start_time
        record["process_time"] = process_time
        logger.error(
            "Operation failed",
            extra={
                **record,
                "error": str(e),
                "process_time": f"{process_time:.4f}s"
            }
        )
        raise
