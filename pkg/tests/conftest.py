from hypothesis import settings

# Single-CPU sandboxes make per-example timings noisy.
settings.register_profile("default", deadline=None)
settings.load_profile("default")
