"""Noiseless subsystems, codes and symmetrization from operator algebras."""

__version__ = "0.1.0"

from .algebra import (OperatorAlgebra, algebra_commutant, center, commutant, generate_algebra,
                      hs_inner)
from .wedderburn import (BlockStructure, Sector, decompose, noiseless_subsystems,
                         to_block_basis, verify_structure)
from .pauli import PauliString
from .codes import (CodeSubspace, KLReport, PairClass, classify_error_pair, extract_code,
                    kl_check, stabilizer_decompose)
from .symmetry import (GroupRep, check_suppression, close_group, ns_from_group, pauli_group,
                       symmetrized_universality, twirl)
from .collective import (cluster_decompose, collective_ops, three_qubit_doublet_states,
                         perm_rep, predicted_multiplicity, schur_weyl_decompose)
from .dynamics import (FidelityTrace, KrausMap, LindbladModel, apply_kraus, block_coherence,
                       lindblad_evolve, ns_fidelity_experiment)
