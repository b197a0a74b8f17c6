from hypothesis import HealthCheck, settings

settings.register_profile(
    "staircap",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("staircap")
