//! Graded splitting subspaces of hypersurface section rings.
//!
//! For `R = F_p[x_0..x_{v−1}]/(G)` with `G` homogeneous of degree `δ`, the
//! splitting ideal at level `e` is `I_e = (m^{[q]} : G^{q−1})R` with
//! `q = p^e`, and everything here is read off the dimension profile
//! `b_e(m) = dim R_m − dim I_e(m)`: the threshold `m_e`, the estimates
//! `α_e = m_e/q` and `(m_e+1)/(q−1)`, the free rank `a_e = Σ_m b_e(m)`,
//! and the duality and monotonicity checks.

mod direct;
mod fano;
mod level;
mod profile;
mod ring;
mod strings;

pub use fano::{fano_report, FanoLevel, FanoReport};
pub use level::{
    b_dimension, fedder_is_fsplit, free_rank, m_threshold, membership_check, Level, Membership,
    Method, Strategy,
};
pub use profile::{profile, profiles, ProfileOptions, SplittingProfile, Threshold};
pub use ring::GradedHypersurface;

/// Size caps that turn runaway instances into an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest allowed row or column count of a `Φ_{e,m}` matrix.
    pub max_matrix_side: usize,
    /// Largest allowed term count of `G^{q−1}` and of products with it.
    pub max_power_terms: usize,
    /// Largest truncated algebra `q^{|group|}` handled per variable group.
    pub max_group_box: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_matrix_side: 500_000,
            max_power_terms: crate::ff::DEFAULT_TERM_CAP,
            max_group_box: 200_000,
        }
    }
}
