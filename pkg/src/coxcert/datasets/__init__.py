"""Bundled reference datasets: every explicit configuration, form system,
and matrix the verification suite runs against, as versioned JSON."""
