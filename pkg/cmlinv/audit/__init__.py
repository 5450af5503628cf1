from .cache import ArtifactCache, compute_hash

__all__ = ["ArtifactCache", "compute_hash"]
