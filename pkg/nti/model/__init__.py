"""Tree encoders, attention, matching and task heads."""
