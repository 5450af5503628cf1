# Prometheus metrics (in-process only, never exported over the network)
from prometheus_client import Counter

computations_total = Counter(
    'cmlinv_computations_total',
    'Total computations by kind',
    ['kind']
)

cache_hits_total = Counter(
    'cmlinv_cache_hits_total',
    'Total artifact cache hits',
    ['kind']
)

witness_checks_total = Counter(
    'cmlinv_witness_checks_total',
    'Reciprocity witness re-checks',
    ['outcome']
)


def snapshot() -> dict:
    """Flatten the counters into {metric{labels}: value} for printing."""
    out = {}
    for metric in (computations_total, cache_hits_total, witness_checks_total):
        for family in metric.collect():
            for sample in family.samples:
                if not sample.name.endswith("_total"):
                    continue
                labels = ",".join(f"{k}={v}" for k, v in sorted(sample.labels.items()))
                out[f"{sample.name}{{{labels}}}"] = sample.value
    return out
