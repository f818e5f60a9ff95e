//! Closed-form base criteria for `PSL(2,q)` and its overgroups acting on pairs of
//! projective points and on the unitary model, with the counting formulas around them.

mod c2;
mod c3;
mod counts;

pub use c2::{
    c2_base_psigma, c2_base_psigma_fast, c2_base_psl, c2_common_neighbour_witness, c2_neighbour_transfer, C2Model,
    C2Witness,
};
pub use c3::{c3_base, c3_clique, c3_common_neighbour_witness, c3_transfer, norm_root, C3Model, C3Witness};
pub use counts::{
    c2_counts, c2_euler_scan, c3_euler_scan, c3_regular_count_prime, euler_bound_scan, odd_nonprime_prime_powers,
    q_closed_form, ClosedForm, ScanResult,
};
