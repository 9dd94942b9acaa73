"""Transfer systems on finite groups: generation, enumeration, realizability."""

from .groups import (FiniteGroup, GroupValidationError, abelian_group, builtin_group,
                     cyclic_group, dihedral_group, klein_group, make_group,
                     quaternion_group, symmetric_group)
from .lattice import SubgroupLattice, automorphisms, pair_orbit_partition, subgroup_lattice
from .transfer import (RelationSet, SearchBoundExceeded, TransferSystem,
                       TransferSystemError, Violation, aut_orbits,
                       closed_form_normal_source, closed_form_normal_target,
                       enumerate_all, generate, irreducible_pairs, is_saturated,
                       join, meet, validate, validate_matrix)
from .bridge import HSetSpec, OrbitMapSpec, admits, morphism_in_category, orbit_set, \
    system_from_orbits
from .universes import (CyclicUniverseIndexSet, all_index_sets, induce_lambda,
                        induced_character, lambda_character, lambda_kernel_order,
                        restrict_lambda)
from .realize import (CocyclicUniverseSpec, LinIsomFixtureRow, NotRealizable,
                      RepCatalogEntry, catalog,
                      linisom_cyclic, linisom_fixture, linisom_image_cyclic,
                      linisom_image_fixture, minimal_steiner_universe,
                      realize_saturated_cpn, realize_saturated_cpq, steiner_abelian,
                      steiner_cyclic, steiner_image, unrealized_fixture)
from .chains import MaximalChain, layer_subgroups, maximal_chain

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
