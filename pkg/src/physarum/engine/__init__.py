"""Growth engine: wavefront expansion, active zones and the tube graph they build."""
