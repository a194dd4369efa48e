from dpenet.verification.gradient_suite import CHECKS, GradCheckResult, run_gradient_suite

__all__ = [
    'CHECKS',
    'GradCheckResult',
    'run_gradient_suite',
]
