"""Convolution/transform algebra on finite cyclic groups, with classifiers
that recover the canonical transform form of conforming operators (and a
concrete violation witness otherwise), plus desk-scale circle-grid and
twisted-convolution counterparts."""

from .convhom import ConvClassification, classify, construct, roundtrip_residual
from .exchange import (BetaProbe, ExchangeClassification,
                       check_involution_symmetry, classify_exchange,
                       classify_fourier_exchange, construct_exchange,
                       probe_beta)
from .groups import (Group, Signal, constant, convolve, delta, dft,
                     expectation, idft, pointwise_mul)
from .intertwine import (IntertwinerClassification, PhaseFunction,
                         check_intertwining, classify_intertwiner,
                         construct_intertwiner, modulate, translate)
from .operators import (AxiomReport, Operator, Witness, apply,
                        check_conv_homomorphism, check_exchange_axioms,
                        compose, random_signal, rel_residual)
from .torus import (KernelFamily, TorusClassification, TorusGrid,
                    check_character_equation, classify_torus_operator,
                    extract_kernels, fourier_coefficient_operator,
                    recover_frequency)
from .twisted import (OperatorKernel, PhaseSpaceFunction, PlaneGrid,
                      compose_kernels, gaussian_pair, rho_kernel, rho_point,
                      twisted_convolve, verify_rho_homomorphism)

__version__ = "0.1.0"
