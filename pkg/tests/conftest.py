import os

from hypothesis import HealthCheck, settings

# property suites run at least 10^3 examples each
settings.register_profile(
    "lgcy",
    max_examples=1000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "lgcy"))
