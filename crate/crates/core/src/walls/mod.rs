//! Phase bounds along parameter segments, destabilizing candidates, path
//! simulation, the Ext^2-vanishing certificate and expected dimensions.

pub mod enumerate;
pub mod ext2;
pub mod interval;
pub mod simulate;

use num_traits::One;

use crate::error::Result;
use crate::lattice::{CharVec, SurfaceLattice};
use crate::rational::Rat;

pub use enumerate::{enumerate_candidate_walls, CandidateWall, Region, WallWitness};
pub use ext2::{ext2_certificate, ext2_vanishing_certificate, Counterexample, Ext2Branch, Ext2Certificate};
pub use interval::{phase_bound_interval, EndpointLabel, ParabolaPoint, PhaseInterval};
pub use simulate::{simulate_destabilization_paths, LatticeBounds, PathEvent, PathNode, PathTree, Split};

/// `1 - chi(ch, ch)`.
pub fn expected_moduli_dim(ch: &CharVec, lattice: &SurfaceLattice) -> Result<Rat> {
    Ok(Rat::one() - lattice.euler_pairing(ch, ch)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DivisorClass;
    use crate::rational::int;

    #[test]
    fn dimension_examples() {
        let l = SurfaceLattice::projective_plane();
        let ch = |r, e| CharVec::new(int(r), DivisorClass::zero(1), int(e));
        assert_eq!(expected_moduli_dim(&ch(1, 0), &l).unwrap(), int(0));
        assert_eq!(expected_moduli_dim(&ch(1, -2), &l).unwrap(), int(4));
        // closed-form value for a point's character: chi = 0
        assert_eq!(expected_moduli_dim(&ch(0, 1), &l).unwrap(), int(1));
    }
}
