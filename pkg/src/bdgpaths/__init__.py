"""Truncated path algebras of finite simplicial sets and the relative homology of their powers."""

from .fox import HomologyModel, fox_derivative, homology_model, kappa, loop_model, path_model, truncate
from .hopf import (compose, compose_homological, coproduct, dual_cup_cokernel, embed,
                   equalizer_homological, k_kernel, primitive_part)
from .lattice import FgAbGroup, GroupHom, Lattice, hermite_normal_form, smith_normal_form
from .oracle import ResourceLimitError, kappa_chain, product, relative_homology, subspace
from .space import (Basepoints, SimplicialSet, SpaceError, builtin_space, from_dict,
                    fundamental_presentation, validate)
from .truncring import (PathClass, TruncPoly, TruncRing, build_ring, graded_piece,
                        ideal_quotient, magnus, path_class)

__version__ = "0.1.0"
