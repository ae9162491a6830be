# Licensed under the MIT License.
"""Same-classification probability: exact enumeration, Monte-Carlo sampling and the
generating-function approximations."""

from noisybayes.channel import NoiseSpec
from noisybayes.model import LogTerms

from .result import (
    ScpResult,  # noqa: F401
    EvalConfig,  # noqa: F401
    DEFAULT_K,  # noqa: F401
    DEFAULT_HYBRID_ORDER,  # noqa: F401
    DEFAULT_TRIALS,  # noqa: F401
)
from .exact import (
    scp_exact,  # noqa: F401
    scp_averaged,  # noqa: F401
    scp_monte_carlo,  # noqa: F401
    scp_monte_carlo_terms,  # noqa: F401
    same_class_mass,  # noqa: F401
)
from .quantize import (
    QuantizationScheme,  # noqa: F401
    DegenerateSpanError,  # noqa: F401
    build_quantization,  # noqa: F401
)
from .polynomial import (
    BivariatePolynomial,  # noqa: F401
    expand_generating_function,  # noqa: F401
    multiply_direct,  # noqa: F401
    multiply_transform,  # noqa: F401
    poisson_binomial_pmf,  # noqa: F401
)
from .approx import (
    GeneratingFunction,  # noqa: F401
    approx_components,  # noqa: F401
    check_subset_count,  # noqa: F401
    approx_from_components,  # noqa: F401
    hybrid_from_components,  # noqa: F401
    scp_approx,  # noqa: F401
    scp_hybrid,  # noqa: F401
)


def compute_scp(terms: LogTerms, noise: NoiseSpec, config: EvalConfig = EvalConfig()) -> ScpResult:
    """Evaluate the SCP of one point with the method chosen by ``config``."""
    method = config.method
    if method.is_exact():
        return scp_exact(terms, noise)
    elif method.is_approx():
        return scp_approx(terms, noise, config.k, config.shift, config.mult)
    elif method.is_hybrid():
        order = config.hybrid_order(terms.n)
        return scp_hybrid(terms, noise, config.k, config.shift, order, config.mult)
    elif method.is_monte_carlo():
        return scp_monte_carlo_terms(terms, noise, config.trials, config.seed)
    else:
        raise NotImplementedError(method)
