"""Spectra of sums of free operators: boundary tracing, densities, moments."""

try:
    # installed layout: the extension lives inside the package
    from freespectra import _core
except ImportError:
    # build-tree layout: the extension directory is on sys.path
    import _core

FreeSpectraError = _core.FreeSpectraError
atom_mass = _core.atom_mass
cauchy = _core.cauchy
classify = _core.classify
data_checksum = _core.data_checksum
density = _core.density
factorization_check = _core.factorization_check
feasible_t = _core.feasible_t
implicit_curve_eval = _core.implicit_curve_eval
model_string = _core.model_string
moments = _core.moments
norm_bound = _core.norm_bound
spectral_radius = _core.spectral_radius
trace_boundary = _core.trace_boundary
trace_moment = _core.trace_moment

__all__ = [
    "FreeSpectraError",
    "atom_mass",
    "cauchy",
    "classify",
    "data_checksum",
    "density",
    "factorization_check",
    "feasible_t",
    "implicit_curve_eval",
    "model_string",
    "moments",
    "norm_bound",
    "spectral_radius",
    "trace_boundary",
    "trace_moment",
]
