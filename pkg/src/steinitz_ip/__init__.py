"""Integer programming in standard form via Steinitz-type dynamic programs."""
