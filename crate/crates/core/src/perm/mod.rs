//! Permutations, stabiliser chains and the group-theoretic queries built on them.

mod chain;
mod classes;
mod group;
mod permutation;
mod subgroup;

pub use chain::StabChain;
pub use classes::{class_keys, prime_order_class_reps, ConjClassData};
pub(crate) use group::orbits_under;
pub use group::PermGroup;
pub use permutation::Permutation;
pub use subgroup::{find_subgroup, order_profile, SubgroupSpec};

/// Build a stabiliser chain for the group generated by `gens` on `degree` points.
pub fn build_chain(degree: usize, gens: &[Permutation]) -> crate::error::Result<StabChain> {
    StabChain::build(degree, gens, &[], None)
}
