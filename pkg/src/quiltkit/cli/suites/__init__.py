"""Demo suites run by ``quiltkit demo``."""

from quiltkit.cli.suites import closed_surfaces, section6, shrink, trace_laws

SUITES = {
    "closed_surfaces": closed_surfaces.run_suite,
    "trace_laws": trace_laws.run_suite,
    "shrink": shrink.run_suite,
    "section6": section6.run_suite,
}

__all__ = ["SUITES"]
