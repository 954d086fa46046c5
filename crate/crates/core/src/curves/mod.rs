//! Elliptic curves: models and invariants, conductors, torsion, explicit
//! families, Diophantine side conditions and 2-isogeny descent.

pub mod descent;
pub mod dioph;
pub mod exceptional;
pub mod families;
pub mod model;
pub mod tate;
pub mod torsion;

pub use descent::{descent_rank_bound, two_isogeny_descent, DescentResult};
pub use dioph::{eight_p_candidates, sixteen_pm_one_solve, SixteenSolution};
pub use exceptional::{cm_exceptional_list, ExceptionalCurve};
pub use families::{
    four_p_search, neumann_setzer_search, pq_search, pq_search_with, two_p_search, Family,
    FamilyCandidate, FamilyParams, PqBounds,
};
pub use model::{invariants, CurveInvariants, WeierstrassModel};
pub use tate::{conductor, conductor_with_support, local_data, Conductor, ReductionData, ReductionType};
pub use torsion::{order4_reduction_check, two_torsion_structure, z2z4_pq_search, TwoTorsion};
