"""CPU time of the training process."""

import time

try:
    import resource
except ImportError:
    resource = None


def cputime():
    """User CPU seconds spent by this process."""
    if resource is not None:
        return resource.getrusage(resource.RUSAGE_SELF).ru_utime
    return time.process_time()
