"""
Resource monitoring for oracle runs
"""

import gc
import logging
import os
import time
from typing import Any, Dict, Optional

# bytes of working memory per enumerated assignment and matrix entry (int64 digits,
# matrices and relation products held at once)
_BYTES_PER_ENTRY = 8 * 6


class ResourceMonitor:
    """Worker sizing, batch sizing and run statistics, backed by psutil when available"""

    def __init__(self, config_module=None):
        self.config = config_module
        self.logger = logging.getLogger(__name__)

        self.enable_monitoring = self._get_config_value('ENABLE_PERFORMANCE_MONITORING', True)
        self.memory_fraction = self._get_config_value('MEMORY_FRACTION', 0.25)
        self.memory_threshold = self._get_config_value('MEMORY_THRESHOLD', 85)
        self.max_chunk = self._get_config_value('ORACLE_CHUNK', 2**18)

        self.start_time: Optional[float] = None
        self.start_cpu: Optional[float] = None
        self.psutil_available = self._detect_psutil()

    def _get_config_value(self, key: str, default):
        """Get configuration value with fallback to default"""
        if self.config and hasattr(self.config, key):
            return getattr(self.config, key)
        return default

    def _detect_psutil(self) -> bool:
        try:
            import psutil  # noqa: F401
            return True
        except ImportError:
            self.logger.debug("⚠️ psutil not available, limited resource monitoring")
            return False

    # -- sizing -------------------------------------------------------------------------

    def worker_count(self, requested: int) -> int:
        """`requested` workers, or one per physical core when 0"""
        if requested > 0:
            return requested
        count = None
        if self.psutil_available:
            import psutil
            count = psutil.cpu_count(logical=False)
        count = count or os.cpu_count() or 1
        self.logger.debug(f"Auto-selected {count} worker(s)")
        return count

    def available_memory(self) -> Optional[int]:
        if not self.psutil_available:
            return None
        import psutil
        return psutil.virtual_memory().available

    def chunk_size(self, entries: int, workers: int = 1) -> int:
        """Assignments per batch, bounded by the configured chunk and a share of free memory"""
        chunk = int(self.max_chunk)
        available = self.available_memory()
        if available is not None:
            budget = int(available * float(self.memory_fraction)) // max(workers, 1)
            chunk = min(chunk, budget // (max(entries, 1) * _BYTES_PER_ENTRY))
        return max(chunk, 1024)

    # -- run statistics -----------------------------------------------------------------

    def start(self) -> None:
        self.start_time = time.perf_counter()
        self.start_cpu = time.process_time()
        if self.psutil_available:
            import psutil
            psutil.cpu_percent(interval=0)

    def check_system_resources(self) -> Dict[str, float]:
        """Current memory and CPU figures; empty without psutil"""
        if not self.psutil_available:
            return {}
        try:
            import psutil

            memory = psutil.virtual_memory()
            process = psutil.Process()
            stats = {
                'memory_percent': memory.percent,
                'memory_available': memory.available,
                'cpu_percent': psutil.cpu_percent(interval=0),
                'rss': process.memory_info().rss,
            }
            if stats['memory_percent'] > self.memory_threshold:
                self.logger.warning(f"🔴 High memory usage: {stats['memory_percent']:.1f}%")
                gc.collect()
            return stats
        except Exception as e:
            self.logger.error(f"Error checking system resources: {e}")
            return {}

    def stop(self, label: str = "run", level: int = logging.INFO) -> Dict[str, Any]:
        """Log one stats line for the finished run and return the figures"""
        elapsed = time.perf_counter() - self.start_time if self.start_time is not None else 0.0
        stats: Dict[str, Any] = {'elapsed_s': elapsed}
        if self.start_cpu is not None:
            stats['cpu_s'] = time.process_time() - self.start_cpu
        stats.update(self.check_system_resources())
        if not self.enable_monitoring:
            return stats
        if 'rss' in stats:
            self.logger.log(
                level,
                f"📊 {label}: {elapsed:.2f}s, "
                f"CPU: {stats['cpu_percent']:.1f}%, "
                f"RSS: {stats['rss'] / (1024**2):.1f}MB, "
                f"Memory: {stats['memory_percent']:.1f}% "
                f"({stats['memory_available'] / (1024**3):.1f}GB free)"
            )
        else:
            self.logger.log(level, f"📊 {label}: {elapsed:.2f}s")
        return stats

    def get_system_info(self) -> Dict[str, Any]:
        info: Dict[str, Any] = {'psutil_available': self.psutil_available}
        if self.psutil_available:
            import psutil
            info['cpu_count'] = psutil.cpu_count()
            info['physical_cores'] = psutil.cpu_count(logical=False)
            info['memory_total'] = psutil.virtual_memory().total
        else:
            info['cpu_count'] = os.cpu_count()
        return info
