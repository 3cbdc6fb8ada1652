import os


def max_workers(sequential=False):
    """Worker cap for parallel sections; IRRIGEN_THREADS overrides the CPU count."""
    if sequential:
        return 1
    env = os.environ.get("IRRIGEN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1
